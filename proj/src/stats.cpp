#include <aigc/stats.hpp>

#include <algorithm>

namespace aigc
{

std::vector<uint32_t> compute_depth( const aig_network& net )
{
  std::vector<uint32_t> depth( net.size(), 0u );
  net.foreach_and( [&]( uint32_t n ) {
    depth[n] = 1u + std::max( depth[net.fanin0( n ).index()], depth[net.fanin1( n ).index()] );
  } );
  return depth;
}

std::vector<uint32_t> compute_fanout( const aig_network& net )
{
  std::vector<uint32_t> fanout( net.size(), 0u );
  net.foreach_and( [&]( uint32_t n ) {
    ++fanout[net.fanin0( n ).index()];
    ++fanout[net.fanin1( n ).index()];
  } );
  for ( auto po : net.pos() )
    ++fanout[po.index()];
  return fanout;
}

uint32_t network_depth( const aig_network& net )
{
  const auto depth = compute_depth( net );
  uint32_t d = 0;
  for ( auto po : net.pos() )
    d = std::max( d, depth[po.index()] );
  return d;
}

} // namespace aigc
