#include <aigc/mutate.hpp>

#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace aigc
{

std::string_view provenance_name( provenance p )
{
  switch ( p )
  {
  case provenance::eqsat_depth:
    return "eqsat-depth";
  case provenance::eqsat_size:
    return "eqsat-size";
  case provenance::native_balance:
    return "native-balance";
  case provenance::native_simplify:
    return "native-simplify";
  case provenance::native_balance_simplify:
    return "native-balance-simplify";
  case provenance::eqsat_random:
    return "eqsat-random";
  }
  return "unknown";
}

uint64_t derive_seed( uint64_t global_seed, uint32_t root )
{
  /* splitmix64 finalizer over the combined value */
  uint64_t z = global_seed + 0x9e3779b97f4a7c15ull * ( static_cast<uint64_t>( root ) + 1 );
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

namespace
{

/* AND nodes whose only fanout is an uncomplemented AND edge get absorbed into their parent's conjunction */
std::vector<bool> absorbable_nodes( const aig_network& net )
{
  const auto fanout = compute_fanout( net );
  std::vector<bool> absorb( net.size(), false );
  net.foreach_and( [&]( uint32_t n ) {
    for ( auto f : { net.fanin0( n ), net.fanin1( n ) } )
    {
      if ( !f.complemented() && net.is_and( f.index() ) && fanout[f.index()] == 1 )
        absorb[f.index()] = true;
    }
  } );
  return absorb;
}

std::vector<node_ref> collect_conjuncts( const aig_network& net, uint32_t root, const std::vector<bool>& absorb )
{
  std::vector<node_ref> leaves;
  std::vector<uint32_t> stack{ root };
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    stack.pop_back();
    for ( auto f : { net.fanin1( n ), net.fanin0( n ) } )
    {
      if ( !f.complemented() && absorb[f.index()] )
        stack.push_back( f.index() );
      else
        leaves.push_back( f );
    }
  }
  return leaves;
}

/* Rebuilds a network supergate by supergate; `combine` turns a leaf list (already mapped) into one edge. */
template<typename Combine>
aig_network rebuild_supergates( const aig_network& net, Combine&& combine )
{
  const auto absorb = absorbable_nodes( net );
  aig_network out;
  std::vector<node_ref> map( net.size(), const0 );
  for ( auto pi : net.pis() )
    map[pi] = out.create_pi();
  net.foreach_and( [&]( uint32_t n ) {
    if ( absorb[n] )
      return;
    auto leaves = collect_conjuncts( net, n, absorb );
    for ( auto& l : leaves )
      l = map[l.index()] ^ l.complemented();
    map[n] = combine( out, std::move( leaves ) );
  } );
  for ( auto po : net.pos() )
    out.create_po( map[po.index()] ^ po.complemented() );
  return cleanup_dangling( out );
}

struct depth_tracker
{
  std::vector<uint32_t> depth;

  uint32_t of( const aig_network& net, node_ref f )
  {
    if ( depth.size() < net.size() )
    {
      const auto old = depth.size();
      depth.resize( net.size(), 0u );
      for ( auto n = static_cast<uint32_t>( old ); n < net.size(); ++n )
      {
        if ( net.is_and( n ) )
          depth[n] = 1 + std::max( depth[net.fanin0( n ).index()], depth[net.fanin1( n ).index()] );
      }
    }
    return depth[f.index()];
  }
};

node_ref huffman_and( aig_network& out, depth_tracker& dt, std::vector<node_ref> leaves )
{
  if ( leaves.empty() )
    return const1;
  using item = std::pair<uint32_t, uint32_t>; /* (depth, literal) */
  std::priority_queue<item, std::vector<item>, std::greater<>> heap;
  for ( auto l : leaves )
    heap.emplace( dt.of( out, l ), l.literal() );
  while ( heap.size() > 1 )
  {
    const auto a = node_ref::from_literal( heap.top().second );
    heap.pop();
    const auto b = node_ref::from_literal( heap.top().second );
    heap.pop();
    const auto r = out.create_and( a, b );
    heap.emplace( dt.of( out, r ), r.literal() );
  }
  return node_ref::from_literal( heap.top().second );
}

aig_network strash_copy( const aig_network& net )
{
  aig_network out;
  std::vector<node_ref> map( net.size(), const0 );
  for ( auto pi : net.pis() )
    map[pi] = out.create_pi();
  net.foreach_and( [&]( uint32_t n ) {
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    map[n] = out.create_and( map[f0.index()] ^ f0.complemented(), map[f1.index()] ^ f1.complemented() );
  } );
  for ( auto po : net.pos() )
    out.create_po( map[po.index()] ^ po.complemented() );
  return cleanup_dangling( out );
}

aig_network share_conjuncts( const aig_network& net )
{
  depth_tracker dt;
  return rebuild_supergates( net, [&]( aig_network& out, std::vector<node_ref> leaves ) {
    std::sort( leaves.begin(), leaves.end() );
    leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );
    /* pair operands whose conjunction already exists */
    std::vector<node_ref> merged;
    std::vector<bool> taken( leaves.size(), false );
    for ( std::size_t i = 0; i < leaves.size(); ++i )
    {
      if ( taken[i] )
        continue;
      for ( std::size_t j = i + 1; j < leaves.size(); ++j )
      {
        if ( taken[j] )
          continue;
        if ( auto hit = out.lookup_and( leaves[i], leaves[j] ) )
        {
          merged.push_back( *hit );
          taken[i] = taken[j] = true;
          break;
        }
      }
      if ( !taken[i] )
      {
        merged.push_back( leaves[i] );
        taken[i] = true;
      }
    }
    return huffman_and( out, dt, std::move( merged ) );
  } );
}

aig_network merge_equivalent_nodes( const aig_network& net )
{
  const auto sim = simulate( net, exhaustive_patterns( net.num_pis() ) );
  const auto n_words = sim.n_words();
  const std::size_t num_bits = std::size_t{ 1 } << net.num_pis();
  const uint64_t tail_mask = num_bits >= 64 ? ~uint64_t{ 0 } : ( uint64_t{ 1 } << num_bits ) - 1u;

  struct key_hash
  {
    std::size_t operator()( const std::vector<uint64_t>& v ) const noexcept
    {
      uint64_t h = 0xcbf29ce484222325ull;
      for ( auto w : v )
        h = ( h ^ w ) * 0x100000001b3ull;
      return static_cast<std::size_t>( h );
    }
  };
  std::unordered_map<std::vector<uint64_t>, uint32_t, key_hash> first;

  /* normalized so that assignment 0 evaluates to 0 */
  auto normalized = [&]( uint32_t n, bool& phase ) {
    auto v = sim[n];
    std::vector<uint64_t> w( v.begin(), v.end() );
    phase = ( w[0] & 1u ) != 0;
    for ( auto& x : w )
      x = phase ? ~x : x;
    w[n_words - 1] &= tail_mask;
    return w;
  };

  aig_network out;
  std::vector<node_ref> map( net.size(), const0 );
  bool phase = false;
  first.emplace( normalized( 0, phase ), 0u );
  for ( auto pi : net.pis() )
  {
    map[pi] = out.create_pi();
    first.try_emplace( normalized( pi, phase ), pi );
  }
  std::vector<bool> phase_of( net.size(), false );
  net.foreach_and( [&]( uint32_t n ) {
    bool p = false;
    auto key = normalized( n, p );
    phase_of[n] = p;
    auto [it, inserted] = first.try_emplace( std::move( key ), n );
    if ( !inserted )
    {
      const auto rep = it->second;
      bool rep_phase = false;
      if ( net.is_and( rep ) )
        rep_phase = phase_of[rep];
      else
        normalized( rep, rep_phase );
      map[n] = map[rep] ^ ( p != rep_phase );
      return;
    }
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    map[n] = out.create_and( map[f0.index()] ^ f0.complemented(), map[f1.index()] ^ f1.complemented() );
  } );
  for ( auto po : net.pos() )
    out.create_po( map[po.index()] ^ po.complemented() );
  return cleanup_dangling( out );
}

} // namespace

aig_network native_balance( const aig_network& cone_net )
{
  depth_tracker dt;
  return rebuild_supergates( strash_copy( cone_net ), [&]( aig_network& out, std::vector<node_ref> leaves ) {
    return huffman_and( out, dt, std::move( leaves ) );
  } );
}

aig_network native_simplify( const aig_network& cone_net )
{
  std::vector<aig_network> options;
  auto strashed = strash_copy( cone_net );
  auto shared = share_conjuncts( strashed );
  if ( cone_net.num_pis() <= 16 )
    options.push_back( merge_equivalent_nodes( shared ) );
  options.push_back( std::move( shared ) );
  options.push_back( std::move( strashed ) );

  std::size_t best = 0;
  for ( std::size_t i = 1; i < options.size(); ++i )
  {
    if ( options[i].num_ands() < options[best].num_ands() )
      best = i;
  }
  if ( options[best].num_ands() > cone_net.num_ands() )
    return cone_net;
  return std::move( options[best] );
}

bool cone_equivalent( const aig_network& a, const aig_network& b, std::size_t n_words, uint64_t seed )
{
  if ( a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos() )
    return false;
  const auto patterns = a.num_pis() <= 16 ? exhaustive_patterns( a.num_pis() ) : random_patterns( a.num_pis(), n_words, seed );
  const auto sa = simulate( a, patterns );
  const auto sb = simulate( b, patterns );
  const std::size_t num_bits = a.num_pis() <= 16 ? std::size_t{ 1 } << a.num_pis() : 64 * n_words;
  for ( uint32_t i = 0; i < a.num_pos(); ++i )
  {
    const auto va = sa.value( a.po_at( i ) );
    const auto vb = sb.value( b.po_at( i ) );
    for ( std::size_t w = 0; w < va.size(); ++w )
    {
      const uint64_t mask = num_bits >= 64 * ( w + 1 ) ? ~uint64_t{ 0 } : ( uint64_t{ 1 } << ( num_bits % 64 ) ) - 1u;
      if ( ( va[w] ^ vb[w] ) & mask )
        return false;
    }
  }
  return true;
}

candidate_pool generate_candidates( const aig_network& rc_net, const mutation_config& cfg )
{
  candidate_pool pool;
  if ( cfg.pool_size == 0 )
    return pool;

  const auto rc_sig = structural_signature( rc_net );
  std::unordered_set<uint64_t> seen{ rc_sig };

  auto offer = [&]( aig_network net, provenance origin, uint64_t seed ) {
    ++pool.generated;
    if ( pool.variants.size() >= cfg.pool_size )
      return;
    if ( !seen.insert( structural_signature( net ) ).second )
      return;
    if ( !cone_equivalent( rc_net, net, cfg.check_words, cfg.seed ^ 0x5eedu ) )
    {
      ++pool.rejected;
      return;
    }
    candidate_variant v;
    v.size = net.num_ands();
    v.depth = network_depth( net );
    v.cone_net = std::move( net );
    v.origin = origin;
    v.seed = seed;
    pool.variants.push_back( std::move( v ) );
  };
  auto post = [&]( aig_network net ) {
    return cfg.mode == opt_mode::area ? native_simplify( net ) : net;
  };

  const auto sat = saturate( cone_to_term( rc_net ), cfg.rules, cfg.limits );
  pool.saturation_iterations = sat.iterations;
  pool.saturation_stop = sat.reason;
  const auto npis = rc_net.num_pis();

  auto by_depth = extract_variants( sat.graph, sat.root, npis, opt_mode::delay, 1, cfg.seed );
  auto by_size = extract_variants( sat.graph, sat.root, npis, opt_mode::area, 1, cfg.seed );
  offer( post( std::move( by_depth.front() ) ), provenance::eqsat_depth, 0 );
  offer( post( std::move( by_size.front() ) ), provenance::eqsat_size, 0 );

  const auto simplified = native_simplify( rc_net );
  offer( native_balance( rc_net ), provenance::native_balance, 0 );
  offer( simplified, provenance::native_simplify, 0 );
  offer( native_balance( simplified ), provenance::native_balance_simplify, 0 );

  if ( pool.variants.size() < cfg.pool_size )
  {
    const auto random_seed = derive_seed( cfg.seed, 0xfeedu );
    auto randomized = extract_variants( sat.graph, sat.root, npis, cfg.mode, 2 * cfg.pool_size + 1, random_seed );
    for ( std::size_t i = 1; i < randomized.size(); ++i )
      offer( post( std::move( randomized[i] ) ), provenance::eqsat_random, random_seed );
  }
  return pool;
}

} // namespace aigc
