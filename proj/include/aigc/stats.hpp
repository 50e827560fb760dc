/*!
  \file stats.hpp
  \brief Per-node depth and fanout.
*/

#pragma once

#include <aigc/aig.hpp>

#include <cstdint>
#include <vector>

namespace aigc
{

/*! \brief depth(PI) = depth(const) = 0, depth(AND) = 1 + max fanin depth. */
std::vector<uint32_t> compute_depth( const aig_network& net );

/*! \brief Fanin references to each node plus PO references. */
std::vector<uint32_t> compute_fanout( const aig_network& net );

/*! \brief Maximum depth over the POs (0 for a network without POs). */
uint32_t network_depth( const aig_network& net );

} // namespace aigc
