#include <aigc/aig.hpp>

#include <cassert>
#include <utility>

namespace aigc
{

aig_network::aig_network()
{
  nodes_.emplace_back();
}

node_ref aig_network::create_pi()
{
  node nd;
  nd.kind = node_kind::pi;
  nd.pi_position = num_pis();
  const auto index = size();
  nodes_.push_back( nd );
  pis_.push_back( index );
  return { index, false };
}

void aig_network::create_po( node_ref f )
{
  assert( f.index() < size() );
  pos_.push_back( f );
}

void aig_network::replace_po( uint32_t index, node_ref f )
{
  assert( index < num_pos() && f.index() < size() );
  pos_[index] = f;
}

void aig_network::truncate_pos( uint32_t count )
{
  if ( count < pos_.size() )
    pos_.resize( count );
}

node_ref aig_network::append_and( node_ref a, node_ref b )
{
  node nd;
  nd.kind = node_kind::and_gate;
  nd.fanin[0] = a;
  nd.fanin[1] = b;
  const auto index = size();
  nodes_.push_back( nd );
  return { index, false };
}

node_ref aig_network::create_and( node_ref a, node_ref b )
{
  assert( a.index() < size() && b.index() < size() );
  if ( a.literal() > b.literal() )
    std::swap( a, b );

  if ( a == b )
    return a;
  if ( a == !b )
    return const0;
  if ( a == const0 )
    return const0;
  if ( a == const1 )
    return b;

  const auto k = key( a, b );
  if ( auto it = strash_.find( k ); it != strash_.end() )
    return { it->second, false };

  const auto r = append_and( a, b );
  strash_.emplace( k, r.index() );
  return r;
}

node_ref aig_network::create_and_raw( node_ref a, node_ref b )
{
  assert( a.index() < size() && b.index() < size() );
  if ( a.literal() > b.literal() )
    std::swap( a, b );
  const auto r = append_and( a, b );
  strash_.try_emplace( key( a, b ), r.index() );
  return r;
}

std::optional<node_ref> aig_network::lookup_and( node_ref a, node_ref b ) const
{
  if ( a.literal() > b.literal() )
    std::swap( a, b );
  if ( auto it = strash_.find( key( a, b ) ); it != strash_.end() )
    return node_ref{ it->second, false };
  return std::nullopt;
}

node_ref aig_network::create_xor( node_ref a, node_ref b )
{
  const auto n0 = create_and( a, !b );
  const auto n1 = create_and( !a, b );
  return create_or( n0, n1 );
}

node_ref aig_network::create_mux( node_ref sel, node_ref then_ref, node_ref else_ref )
{
  return create_or( create_and( sel, then_ref ), create_and( !sel, else_ref ) );
}

bool structurally_equal( const aig_network& a, const aig_network& b )
{
  if ( a.size() != b.size() || a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos() )
    return false;
  for ( uint32_t n = 0; n < a.size(); ++n )
  {
    if ( a.kind( n ) != b.kind( n ) )
      return false;
    if ( a.is_and( n ) && ( a.fanin0( n ) != b.fanin0( n ) || a.fanin1( n ) != b.fanin1( n ) ) )
      return false;
  }
  for ( uint32_t i = 0; i < a.num_pis(); ++i )
  {
    if ( a.pis()[i] != b.pis()[i] )
      return false;
  }
  for ( uint32_t i = 0; i < a.num_pos(); ++i )
  {
    if ( a.po_at( i ) != b.po_at( i ) )
      return false;
  }
  return true;
}

namespace
{

uint64_t mix( uint64_t x )
{
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

} // namespace

uint64_t structural_signature( const aig_network& net )
{
  std::vector<uint64_t> h( net.size(), 0u );
  h[0] = mix( 0x5bd1e995u );
  for ( auto pi : net.pis() )
    h[pi] = mix( 0x1000u + net.pi_position( pi ) );
  auto edge = [&]( node_ref f ) { return f.complemented() ? mix( h[f.index()] ^ 0xa5a5a5a5a5a5a5a5ull ) : h[f.index()]; };
  net.foreach_and( [&]( uint32_t n ) {
    auto x = edge( net.fanin0( n ) );
    auto y = edge( net.fanin1( n ) );
    if ( x > y )
      std::swap( x, y );
    h[n] = mix( x * 0x9e3779b97f4a7c15ull + mix( y ) );
  } );
  uint64_t sig = mix( net.num_pis() + 1 );
  for ( auto po : net.pos() )
    sig = mix( sig ^ edge( po ) );
  return sig;
}

aig_network cleanup_dangling( const aig_network& net )
{
  std::vector<bool> live( net.size(), false );
  for ( auto po : net.pos() )
    live[po.index()] = true;
  for ( uint32_t n = net.size(); n-- > 1; )
  {
    if ( live[n] && net.is_and( n ) )
    {
      live[net.fanin0( n ).index()] = true;
      live[net.fanin1( n ).index()] = true;
    }
  }

  aig_network out;
  std::vector<node_ref> map( net.size(), const0 );
  for ( auto pi : net.pis() )
    map[pi] = out.create_pi();
  for ( uint32_t n = 1; n < net.size(); ++n )
  {
    if ( !live[n] || !net.is_and( n ) )
      continue;
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    map[n] = out.create_and_raw( map[f0.index()] ^ f0.complemented(), map[f1.index()] ^ f1.complemented() );
  }
  for ( auto po : net.pos() )
    out.create_po( map[po.index()] ^ po.complemented() );
  return out;
}

} // namespace aigc
