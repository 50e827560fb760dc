/*!
  \file verify.hpp
  \brief Combinational equivalence checking by simulation.

  `cec_exhaustive` is a proof for networks with at most 16 PIs. `cec_random`
  only ever proves inequivalence; a clean run is reported as
  `no_mismatch_observed`.
*/

#pragma once

#include <aigc/aig.hpp>
#include <aigc/simulate.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigc
{

enum class cec_status
{
  equivalent,
  no_mismatch_observed,
  counterexample
};

std::string_view cec_status_name( cec_status s );

struct cec_result
{
  cec_status status{ cec_status::equivalent };
  /*! Failing assignment, one entry per PI (only for counterexamples). */
  std::vector<bool> pattern;
  /*! First output that differs under `pattern`. */
  uint32_t output{ 0 };

  bool failed() const { return status == cec_status::counterexample; }

  /*! \brief Pattern as a bit string, PI 0 first. */
  std::string pattern_string() const;
};

class verify_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Computes one vector of `patterns.n_words()` words per output. */
using output_simulator = std::function<std::vector<std::vector<uint64_t>>( const pattern_set& )>;

output_simulator aig_simulator( const aig_network& net );

/*! \brief Exhaustive comparison of two output simulators over `num_pis` <= 16 inputs. */
cec_result check_exhaustive( const output_simulator& a, const output_simulator& b, uint32_t num_pis );

/*! \brief Random comparison with 64 * n_words patterns, simulated in chunks. */
cec_result check_random( const output_simulator& a, const output_simulator& b, uint32_t num_pis,
                         std::size_t n_words, uint64_t seed );

/*! \brief Throws `verify_error` on PI/PO arity mismatch or more than 16 PIs. */
cec_result cec_exhaustive( const aig_network& a, const aig_network& b );

/*! \brief Throws `verify_error` on PI/PO arity mismatch. */
cec_result cec_random( const aig_network& a, const aig_network& b, std::size_t n_words, uint64_t seed );

/*! \brief Exhaustive for at most 16 PIs, otherwise 64 * 1024 random patterns. */
cec_result cec_auto( const aig_network& a, const aig_network& b, uint64_t seed = 0 );

} // namespace aigc
