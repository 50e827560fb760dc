#include <aigc/simulate.hpp>

#include <aigc/kernels.hpp>

#include <algorithm>
#include <random>
#include <unordered_map>

namespace aigc
{

namespace
{

constexpr uint64_t projections[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

constexpr uint32_t max_table_vars = 16;

void fill_projection( std::span<uint64_t> words, uint32_t var )
{
  if ( var < 6 )
  {
    std::fill( words.begin(), words.end(), projections[var] );
    return;
  }
  const std::size_t period = std::size_t{ 1 } << ( var - 6 );
  for ( std::size_t w = 0; w < words.size(); ++w )
    words[w] = ( ( w / period ) & 1u ) ? ~uint64_t{ 0 } : uint64_t{ 0 };
}

} // namespace

pattern_set random_patterns( uint32_t num_pis, std::size_t n_words, uint64_t seed )
{
  pattern_set p( num_pis, n_words );
  std::mt19937_64 rng( seed );
  for ( uint32_t i = 0; i < num_pis; ++i )
  {
    for ( auto& w : p[i] )
      w = rng();
  }
  return p;
}

pattern_set exhaustive_patterns( uint32_t num_pis )
{
  if ( num_pis > max_table_vars )
    throw simulation_error( "exhaustive patterns limited to 16 inputs" );
  const std::size_t n_words = num_pis <= 6 ? 1u : std::size_t{ 1 } << ( num_pis - 6 );
  pattern_set p( num_pis, n_words );
  for ( uint32_t i = 0; i < num_pis; ++i )
    fill_projection( p[i], i );
  return p;
}

std::vector<uint64_t> sim_vectors::value( node_ref f ) const
{
  auto v = ( *this )[f.index()];
  std::vector<uint64_t> out( v.begin(), v.end() );
  if ( f.complemented() )
  {
    for ( auto& w : out )
      w = ~w;
  }
  return out;
}

sim_vectors simulate( const aig_network& net, const pattern_set& patterns )
{
  if ( patterns.num_pis() != net.num_pis() )
    throw simulation_error( "pattern count " + std::to_string( patterns.num_pis() ) +
                            " does not match PI count " + std::to_string( net.num_pis() ) );
  sim_vectors sim( net.size(), patterns.n_words() );
  for ( uint32_t i = 0; i < net.num_pis(); ++i )
  {
    auto src = patterns[i];
    std::copy( src.begin(), src.end(), sim[net.pis()[i]].begin() );
  }
  net.foreach_and( [&]( uint32_t n ) {
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    kernels::and_words( sim[n], sim[f0.index()], f0.complemented(), sim[f1.index()], f1.complemented() );
  } );
  return sim;
}

truth_table::truth_table( uint32_t num_vars )
    : num_vars_( num_vars ),
      words_( num_vars <= 6 ? 1u : std::size_t{ 1 } << ( num_vars - 6 ), 0u )
{
  if ( num_vars > max_table_vars )
    throw cone_error( "truth tables are limited to 16 variables" );
}

void truth_table::set_bit( uint64_t i, bool v )
{
  const uint64_t m = uint64_t{ 1 } << ( i % 64 );
  if ( v )
    words_[i / 64] |= m;
  else
    words_[i / 64] &= ~m;
}

void truth_table::mask_tail()
{
  if ( num_vars_ < 6 )
    words_[0] &= ( uint64_t{ 1 } << ( 1u << num_vars_ ) ) - 1u;
}

std::string truth_table::to_binary() const
{
  std::string s;
  s.reserve( num_bits() );
  for ( uint64_t i = num_bits(); i-- > 0; )
    s.push_back( get_bit( i ) ? '1' : '0' );
  return s;
}

truth_table projection( uint32_t num_vars, uint32_t var )
{
  truth_table tt( num_vars );
  fill_projection( tt.words(), var );
  tt.mask_tail();
  return tt;
}

truth_table compute_truth_table( const aig_network& net, node_ref root, std::span<const uint32_t> leaves )
{
  if ( leaves.size() > max_table_vars )
    throw cone_error( "too many leaves: " + std::to_string( leaves.size() ) );
  const auto num_vars = static_cast<uint32_t>( leaves.size() );
  const std::size_t n_words = num_vars <= 6 ? 1u : std::size_t{ 1 } << ( num_vars - 6 );

  std::unordered_map<uint32_t, std::vector<uint64_t>> values;
  for ( uint32_t i = 0; i < num_vars; ++i )
  {
    std::vector<uint64_t> w( n_words );
    fill_projection( w, i );
    values.emplace( leaves[i], std::move( w ) );
  }
  if ( !values.contains( 0 ) )
    values.emplace( 0u, std::vector<uint64_t>( n_words, 0u ) );

  /* iterative post-order over the cone bounded by the leaves */
  std::vector<uint32_t> stack{ root.index() };
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    if ( values.contains( n ) )
    {
      stack.pop_back();
      continue;
    }
    if ( !net.is_and( n ) )
      throw cone_error( "leaf set does not cut the cone: reached PI node " + std::to_string( n ) );
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    const bool ready0 = values.contains( f0.index() );
    const bool ready1 = values.contains( f1.index() );
    if ( ready0 && ready1 )
    {
      std::vector<uint64_t> w( n_words );
      kernels::and_words( w, values.at( f0.index() ), f0.complemented(), values.at( f1.index() ), f1.complemented() );
      values.emplace( n, std::move( w ) );
      stack.pop_back();
      continue;
    }
    if ( !ready0 )
      stack.push_back( f0.index() );
    if ( !ready1 )
      stack.push_back( f1.index() );
  }

  truth_table tt( num_vars );
  const auto& w = values.at( root.index() );
  std::copy( w.begin(), w.end(), tt.words().begin() );
  if ( root.complemented() )
  {
    for ( auto& x : tt.words() )
      x = ~x;
  }
  tt.mask_tail();
  return tt;
}

std::vector<truth_table> po_truth_tables( const aig_network& net )
{
  const auto patterns = exhaustive_patterns( net.num_pis() );
  const auto sim = simulate( net, patterns );
  std::vector<truth_table> out;
  out.reserve( net.num_pos() );
  for ( auto po : net.pos() )
  {
    truth_table tt( net.num_pis() );
    const auto v = sim.value( po );
    std::copy( v.begin(), v.end(), tt.words().begin() );
    tt.mask_tail();
    out.push_back( std::move( tt ) );
  }
  return out;
}

} // namespace aigc
