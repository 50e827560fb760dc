/*!
  \file mutate.hpp
  \brief Choice cone candidates: e-graph extractions plus native balance/simplify passes.
*/

#pragma once

#include <aigc/cone.hpp>
#include <aigc/egraph.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace aigc
{

enum class provenance : uint8_t
{
  eqsat_depth,
  eqsat_size,
  native_balance,
  native_simplify,
  native_balance_simplify,
  eqsat_random
};

std::string_view provenance_name( provenance p );

/*! \brief Standalone cone network over the same leaves as its representative cone. */
struct candidate_variant
{
  aig_network cone_net;
  provenance origin{ provenance::eqsat_depth };
  /*! Seed of the randomized extraction (eqsat_random only). */
  uint64_t seed{ 0 };
  uint32_t size{ 0 };
  uint32_t depth{ 0 };
};

/*! \brief Depth-minimizing reassociation of AND trees.

  Multi-input conjunctions are collected through uncomplemented, single-fanout
  AND edges and rebuilt by repeatedly pairing the two shallowest operands.
*/
aig_network native_balance( const aig_network& cone_net );

/*! \brief Size-non-increasing cleanup.

  Rebuilds through strash folding, pairs conjuncts that already exist as AND
  nodes, and (for up to 16 inputs) merges nodes with equal or complementary
  truth tables. Returns the smaller of the result and the strashed input.
*/
aig_network native_simplify( const aig_network& cone_net );

struct mutation_config
{
  opt_mode mode{ opt_mode::delay };
  uint32_t pool_size{ 10 };
  uint64_t seed{ 0 };
  saturation_limits limits{};
  std::vector<rewrite_rule> rules{ default_rules() };
  /*! Random-simulation words for cones with more than 16 inputs. */
  std::size_t check_words{ 16 };
};

struct candidate_pool
{
  std::vector<candidate_variant> variants;
  /*! Candidates produced before dedup/admission. */
  uint32_t generated{ 0 };
  /*! Candidates rejected by the equivalence check (must stay 0). */
  uint32_t rejected{ 0 };
  uint32_t saturation_iterations{ 0 };
  stop_reason saturation_stop{ stop_reason::saturated };
};

/*! \brief Candidate pool for one representative cone network.

  Variants identical to the cone (by structural signature) and duplicates are
  dropped; every admitted variant is checked for equivalence with the cone
  (exhaustively up to 16 inputs, otherwise with random simulation).
*/
candidate_pool generate_candidates( const aig_network& rc_net, const mutation_config& cfg );

/*! \brief Per-cone seed derived from the global seed and the cone root. */
uint64_t derive_seed( uint64_t global_seed, uint32_t root );

/*! \brief True if the single-PO networks agree: exhaustive up to 16 inputs, else random patterns. */
bool cone_equivalent( const aig_network& a, const aig_network& b, std::size_t n_words, uint64_t seed );

} // namespace aigc
