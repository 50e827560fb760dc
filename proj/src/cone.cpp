#include <aigc/cone.hpp>

#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace aigc
{

std::string_view mode_name( opt_mode m )
{
  return m == opt_mode::delay ? "delay" : "area";
}

void validate( const selection_config& cfg )
{
  if ( cfg.thresholds.empty() )
    throw std::invalid_argument( "at least one size threshold is required" );
  for ( std::size_t i = 0; i < cfg.thresholds.size(); ++i )
  {
    if ( cfg.thresholds[i] == 0 )
      throw std::invalid_argument( "size thresholds must be positive" );
    if ( i > 0 && cfg.thresholds[i] >= cfg.thresholds[i - 1] )
      throw std::invalid_argument( "size thresholds must be strictly descending" );
  }
  if ( cfg.fanout_limit == 0 )
    throw std::invalid_argument( "fanout limit must be at least 1" );
}

std::vector<uint32_t> mark_critical_path( const aig_network& net )
{
  const auto depth = compute_depth( net );
  uint32_t max_depth = 0;
  for ( auto po : net.pos() )
    max_depth = std::max( max_depth, depth[po.index()] );

  constexpr int64_t unreachable = -1;
  std::vector<int64_t> height( net.size(), unreachable );
  for ( auto po : net.pos() )
    height[po.index()] = std::max<int64_t>( height[po.index()], 0 );
  for ( uint32_t n = net.size(); n-- > 1; )
  {
    if ( !net.is_and( n ) || height[n] == unreachable )
      continue;
    for ( auto f : { net.fanin0( n ), net.fanin1( n ) } )
      height[f.index()] = std::max( height[f.index()], height[n] + 1 );
  }

  std::vector<uint32_t> critical;
  for ( uint32_t n = 1; n < net.size(); ++n )
  {
    if ( height[n] != unreachable && depth[n] + height[n] == static_cast<int64_t>( max_depth ) )
      critical.push_back( n );
  }
  return critical;
}

namespace
{

void fill_support( const aig_network& net, cone& c )
{
  std::sort( c.internal.begin(), c.internal.end() );
  c.support.clear();
  for ( auto n : c.internal )
  {
    for ( auto f : { net.fanin0( n ).index(), net.fanin1( n ).index() } )
    {
      if ( !std::binary_search( c.internal.begin(), c.internal.end(), f ) )
        c.support.push_back( f );
    }
  }
  std::sort( c.support.begin(), c.support.end() );
  c.support.erase( std::unique( c.support.begin(), c.support.end() ), c.support.end() );
}

} // namespace

cone mffc_cone_supp( const aig_network& net, uint32_t n, const std::vector<uint32_t>& fanout )
{
  if ( !net.is_and( n ) )
    throw std::invalid_argument( "MFFC root must be an AND node" );
  cone c;
  c.root = n;
  c.kind = cone_kind::mffc;
  c.internal.push_back( n );

  std::unordered_map<uint32_t, uint32_t> refs;
  std::vector<uint32_t> stack{ n };
  while ( !stack.empty() )
  {
    const auto m = stack.back();
    stack.pop_back();
    for ( auto f : { net.fanin0( m ).index(), net.fanin1( m ).index() } )
    {
      if ( !net.is_and( f ) )
        continue;
      auto [it, inserted] = refs.try_emplace( f, fanout[f] );
      if ( --it->second == 0 )
      {
        c.internal.push_back( f );
        stack.push_back( f );
      }
    }
  }
  fill_support( net, c );
  return c;
}

cone mffc_cone_supp( const aig_network& net, uint32_t n )
{
  return mffc_cone_supp( net, n, compute_fanout( net ) );
}

cone lowfanout_cone_supp( const aig_network& net, uint32_t n, uint32_t fanout_limit,
                          const std::vector<uint32_t>& fanout )
{
  if ( !net.is_and( n ) )
    throw std::invalid_argument( "cone root must be an AND node" );
  if ( fanout_limit == 0 )
    throw std::invalid_argument( "fanout limit must be at least 1" );
  cone c;
  c.root = n;
  c.kind = cone_kind::low_fanout;

  std::unordered_map<uint32_t, bool> seen{ { n, true } };
  std::vector<uint32_t> stack{ n };
  while ( !stack.empty() )
  {
    const auto m = stack.back();
    stack.pop_back();
    c.internal.push_back( m );
    for ( auto f : { net.fanin0( m ).index(), net.fanin1( m ).index() } )
    {
      if ( net.is_and( f ) && fanout[f] <= fanout_limit && seen.emplace( f, true ).second )
        stack.push_back( f );
    }
  }
  fill_support( net, c );
  return c;
}

cone lowfanout_cone_supp( const aig_network& net, uint32_t n, uint32_t fanout_limit )
{
  return lowfanout_cone_supp( net, n, fanout_limit, compute_fanout( net ) );
}

std::vector<cone> select_representative_cones( const aig_network& net, const selection_config& cfg )
{
  validate( cfg );
  const auto fanout = compute_fanout( net );

  std::vector<uint32_t> roots;
  if ( cfg.mode == opt_mode::delay )
  {
    for ( auto n : mark_critical_path( net ) )
    {
      if ( net.is_and( n ) )
        roots.push_back( n );
    }
  }
  else
  {
    net.foreach_and( [&]( uint32_t n ) { roots.push_back( n ); } );
  }

  auto build = [&]( cone_kind kind, uint32_t root ) {
    return kind == cone_kind::mffc ? mffc_cone_supp( net, root, fanout )
                                   : lowfanout_cone_supp( net, root, cfg.fanout_limit, fanout );
  };

  auto run_pass = [&]( cone_kind kind ) {
    /* sizes only; cones are rebuilt on demand to bound memory on large inputs */
    struct entry
    {
      uint32_t root;
      std::size_t internal;
      std::size_t support;
    };
    std::vector<entry> entries;
    entries.reserve( roots.size() );
    for ( auto r : roots )
    {
      const auto c = build( kind, r );
      entries.push_back( { r, c.internal.size(), c.support.size() } );
    }
    std::sort( entries.begin(), entries.end(), []( const entry& a, const entry& b ) {
      return a.internal != b.internal ? a.internal > b.internal : a.root < b.root;
    } );

    std::vector<cone> selected;
    std::vector<bool> covered( net.size(), false );
    std::vector<bool> used( net.size(), false );
    std::vector<bool> blocked( net.size(), false );
    auto overlaps = [&]( const cone& c ) {
      return std::any_of( c.internal.begin(), c.internal.end(), [&]( uint32_t m ) { return covered[m]; } );
    };

    for ( auto k : cfg.thresholds )
    {
      std::vector<cone> qualifying;
      for ( const auto& e : entries )
      {
        if ( e.internal < k )
          break;
        if ( used[e.root] || blocked[e.root] || e.support < 2 )
          continue;
        auto c = build( kind, e.root );
        if ( overlaps( c ) )
        {
          blocked[e.root] = true;
          continue;
        }
        qualifying.push_back( std::move( c ) );
      }
      const std::size_t limit = qualifying.size() > cfg.candidate_trigger ? cfg.per_threshold_cap : qualifying.size();
      std::size_t taken = 0;
      for ( auto& c : qualifying )
      {
        if ( taken >= limit )
          break;
        if ( overlaps( c ) )
          continue;
        for ( auto m : c.internal )
          covered[m] = true;
        used[c.root] = true;
        c.threshold = k;
        selected.push_back( std::move( c ) );
        ++taken;
      }
    }
    return selected;
  };

  auto result = run_pass( cone_kind::mffc );
  if ( result.empty() )
    result = run_pass( cone_kind::low_fanout );
  return result;
}

aig_network extract_cone_aig( const aig_network& net, const cone& c )
{
  aig_network out;
  std::unordered_map<uint32_t, node_ref> map;
  for ( auto s : c.support )
    map.emplace( s, out.create_pi() );
  for ( auto n : c.internal )
  {
    if ( !net.is_and( n ) )
      throw cone_error( "cone internal node " + std::to_string( n ) + " is not an AND" );
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    auto i0 = map.find( f0.index() );
    auto i1 = map.find( f1.index() );
    if ( i0 == map.end() || i1 == map.end() )
      throw cone_error( "cone is not closed under fanin at node " + std::to_string( n ) );
    map.emplace( n, out.create_and_raw( i0->second ^ f0.complemented(), i1->second ^ f1.complemented() ) );
  }
  auto it = map.find( c.root );
  if ( it == map.end() )
    throw cone_error( "cone root is not part of the cone" );
  out.create_po( it->second );
  return out;
}

} // namespace aigc
