/*!
  \file mapper.hpp
  \brief Choice-aware k-LUT mapping with priority cuts.

  Cuts are enumerated over the quotient graph of a choice network: the cut
  set of a class representative is the union of the cut sets produced by
  the representative itself and by each of its choice roots. Cut functions
  are always expressed in the polarity of the representative.

  Two covering modes are provided. `map_depth` finds the minimum LUT depth
  and then recovers area without exceeding it; `map_area` minimizes the LUT
  count with area flow followed by exact local area refinement.
*/

#pragma once

#include <aigc/aig.hpp>
#include <aigc/choice.hpp>
#include <aigc/simulate.hpp>
#include <aigc/verify.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aigc
{

enum class cut_ranking
{
  /*! (depth, area flow, max leaf) */
  depth,
  /*! (area flow, depth, max leaf) */
  area
};

struct mapper_config
{
  uint32_t k{ 6 };
  uint32_t cut_limit{ 8 };
  uint32_t rounds{ 2 };
};

/*! Truth table of up to 8 variables; bit i is the value at assignment i. */
using cut_function = std::array<uint64_t, 4>;

struct cut
{
  std::array<uint32_t, 8> leaves{};
  uint8_t size{ 0 };
  uint32_t owner{ 0 };
  /*! Class member whose structure realizes the cut. */
  uint32_t member{ 0 };
  cut_function function{};
  uint32_t depth{ 0 };
  double area_flow{ 0.0 };

  std::span<const uint32_t> leaf_span() const { return { leaves.data(), size }; }
  bool is_trivial() const { return size == 1 && leaves[0] == owner; }
  /*! \brief Function as a bit string, highest assignment first. */
  std::string function_string() const;
};

class mapper_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Priority cuts for every node of the quotient graph (indexed by node).

  Non-quotient nodes (choice roots) get empty sets. Every quotient node has
  its trivial cut as the last entry. Throws `mapper_error` if k is outside
  [2, 8], the cut limit is 0, or the quotient graph is cyclic.
*/
std::vector<std::vector<cut>> enumerate_cuts( const choice_network& cn, const mapper_config& cfg,
                                              cut_ranking ranking = cut_ranking::depth );

/*! \brief LUT network. Signal 0 is constant false, signals 1..num_pis are
           the PIs, then one signal per LUT in topological order. */
struct lut_netlist
{
  struct lut
  {
    std::vector<uint32_t> fanins;
    /*! 2^|fanins| bits, at least one word. */
    std::vector<uint64_t> function;
    /*! Node of the subject graph implemented by this LUT. */
    uint32_t origin{ 0 };
  };
  struct output
  {
    uint32_t signal{ 0 };
    bool complemented{ false };
  };

  uint32_t num_pis{ 0 };
  std::vector<lut> luts;
  std::vector<output> outputs;

  uint32_t lut_signal( std::size_t i ) const { return static_cast<uint32_t>( 1 + num_pis + i ); }
  uint32_t depth() const;
};

struct mapping_result
{
  /*! Covered node -> chosen cut. */
  std::map<uint32_t, cut> selected;
  uint32_t lut_count{ 0 };
  uint32_t mapped_depth{ 0 };
  lut_netlist netlist;
};

mapping_result map_depth( const choice_network& cn, const mapper_config& cfg = {} );
mapping_result map_area( const choice_network& cn, const mapper_config& cfg = {} );

/*! \brief One vector per output. */
std::vector<std::vector<uint64_t>> simulate_netlist( const lut_netlist& nl, const pattern_set& patterns );

/*! \brief Exhaustive for at most 16 PIs, otherwise 64 * 1024 random patterns. */
cec_result verify_mapping( const aig_network& subject, const mapping_result& result, uint64_t seed = 0 );

/*! \brief BLIF text: PIs `pi<i>`, POs `po<i>`, LUTs `n<origin>`, on-set covers. */
std::string write_blif( const lut_netlist& nl, const std::string& model = "mapped" );

} // namespace aigc
