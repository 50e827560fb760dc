/*!
  \file cone.hpp
  \brief Representative cone selection: MFFCs and low-fanout cones.

  Candidate roots are the critical-path AND nodes (delay mode) or all AND
  nodes (area mode). Thresholds are walked from largest to smallest; at each
  threshold the qualifying MFFCs are taken largest first. Low-fanout cones
  are used only when no MFFC qualifies at any threshold.
*/

#pragma once

#include <aigc/aig.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace aigc
{

enum class opt_mode
{
  delay,
  area
};

std::string_view mode_name( opt_mode m );

enum class cone_kind
{
  mffc,
  low_fanout
};

/*! \brief Rooted subgraph; `internal` and `support` are sorted by node index. */
struct cone
{
  uint32_t root{ 0 };
  std::vector<uint32_t> internal;
  std::vector<uint32_t> support;
  cone_kind kind{ cone_kind::mffc };
  /*! Size threshold at which the cone was selected (0 if built directly). */
  uint32_t threshold{ 0 };
};

struct selection_config
{
  opt_mode mode{ opt_mode::delay };
  std::vector<uint32_t> thresholds{ 800, 85, 30, 20, 15, 10 };
  uint32_t fanout_limit{ 3 };
  uint32_t per_threshold_cap{ 10 };
  uint32_t candidate_trigger{ 100 };
};

/*! \brief Throws std::invalid_argument unless thresholds are strictly descending and positive and T >= 1. */
void validate( const selection_config& cfg );

/*! \brief Nodes on some maximum-depth PI-to-PO path, sorted (PIs included). */
std::vector<uint32_t> mark_critical_path( const aig_network& net );

/*! \brief Maximum fanout-free cone of AND node `n`, by reference-count peeling. */
cone mffc_cone_supp( const aig_network& net, uint32_t n, const std::vector<uint32_t>& fanout );
cone mffc_cone_supp( const aig_network& net, uint32_t n );

/*! \brief `n` plus all fanin-reachable AND nodes with global fanout <= T. */
cone lowfanout_cone_supp( const aig_network& net, uint32_t n, uint32_t fanout_limit,
                          const std::vector<uint32_t>& fanout );
cone lowfanout_cone_supp( const aig_network& net, uint32_t n, uint32_t fanout_limit );

/*! \brief Cone selection over all thresholds; result cones are pairwise internal-disjoint. */
std::vector<cone> select_representative_cones( const aig_network& net, const selection_config& cfg );

/*! \brief Standalone network: one PI per support node (in order), one PO for the root. */
aig_network extract_cone_aig( const aig_network& net, const cone& c );

} // namespace aigc
