#include <aigc/rank.hpp>

#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace aigc
{

namespace
{

struct vector_hash
{
  std::size_t operator()( const std::vector<uint64_t>& v ) const noexcept
  {
    uint64_t h = 0xcbf29ce484222325ull;
    for ( auto w : v )
      h = ( h ^ w ) * 0x100000001b3ull;
    return static_cast<std::size_t>( h );
  }
};

} // namespace

double sim_dissimilarity( const aig_network& subj, const aig_network& cand, std::size_t n_words, uint64_t seed )
{
  if ( subj.num_pis() != cand.num_pis() )
    throw std::invalid_argument( "sim_dissimilarity: PI count mismatch" );
  if ( n_words == 0 )
    throw std::invalid_argument( "sim_dissimilarity: n_words must be positive" );

  const auto patterns = random_patterns( subj.num_pis(), n_words, seed );
  const auto s_subj = simulate( subj, patterns );
  const auto s_cand = simulate( cand, patterns );

  std::unordered_set<std::vector<uint64_t>, vector_hash> fingerprints;
  subj.foreach_and( [&]( uint32_t n ) {
    auto v = s_subj[n];
    std::vector<uint64_t> w( v.begin(), v.end() );
    if ( w[0] & 1u )
    {
      for ( auto& x : w )
        x = ~x;
    }
    fingerprints.insert( std::move( w ) );
  } );

  uint32_t mismatches = 0;
  std::vector<uint64_t> w( n_words );
  cand.foreach_and( [&]( uint32_t n ) {
    auto v = s_cand[n];
    std::copy( v.begin(), v.end(), w.begin() );
    if ( fingerprints.contains( w ) )
      return;
    for ( auto& x : w )
      x = ~x;
    if ( !fingerprints.contains( w ) )
      ++mismatches;
  } );
  const auto total = cand.num_ands();
  return total == 0 ? 0.0 : static_cast<double>( mismatches ) / total;
}

double and_disparity( const aig_network& subj, const aig_network& cand )
{
  const double a_s = subj.num_ands();
  const double a_c = cand.num_ands();
  return std::abs( a_s - a_c ) / std::max( { a_s, a_c, 1.0 } );
}

double pearson_abs_correlation( std::span<const double> x, std::span<const double> y )
{
  const auto m = std::min( x.size(), y.size() );
  if ( m < 2 )
    return 1.0;
  x = x.first( m );
  y = y.first( m );
  const double mx = std::accumulate( x.begin(), x.end(), 0.0 ) / m;
  const double my = std::accumulate( y.begin(), y.end(), 0.0 ) / m;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for ( std::size_t i = 0; i < m; ++i )
  {
    sxy += ( x[i] - mx ) * ( y[i] - my );
    sxx += ( x[i] - mx ) * ( x[i] - mx );
    syy += ( y[i] - my ) * ( y[i] - my );
  }
  if ( sxx == 0.0 || syy == 0.0 )
    return std::equal( x.begin(), x.end(), y.begin() ) ? 1.0 : 0.0;
  return std::min( 1.0, std::abs( sxy / ( std::sqrt( sxx ) * std::sqrt( syy ) ) ) );
}

pearson_result pearson_sequence_dissimilarity( std::span<const double> x, std::span<const double> y )
{
  if ( std::min( x.size(), y.size() ) < 2 )
    return { 0.0, true };
  return { 1.0 - pearson_abs_correlation( x, y ), false };
}

pearson_result pearson_dissimilarity( const aig_network& subj, const aig_network& cand )
{
  auto sequences = []( const aig_network& net, std::vector<double>& d, std::vector<double>& f ) {
    const auto depth = compute_depth( net );
    const auto fanout = compute_fanout( net );
    for ( uint32_t n = 1; n < net.size(); ++n )
    {
      d.push_back( depth[n] );
      f.push_back( fanout[n] );
    }
  };
  std::vector<double> ds, fs, dc, fc;
  sequences( subj, ds, fs );
  sequences( cand, dc, fc );
  if ( std::min( ds.size(), dc.size() ) < 2 )
    return { 0.0, true };
  const double r_depth = pearson_abs_correlation( ds, dc );
  const double r_fanout = pearson_abs_correlation( fs, fc );
  return { 1.0 - ( r_depth + r_fanout ) / 2.0, false };
}

double quality_score( const aig_network& rc, const aig_network& cand, opt_mode mode )
{
  double before, after;
  if ( mode == opt_mode::delay )
  {
    before = network_depth( rc );
    after = network_depth( cand );
  }
  else
  {
    before = rc.num_ands();
    after = cand.num_ands();
  }
  return std::clamp( ( before - after ) / std::max( before, 1.0 ), -1.0, 1.0 );
}

score_record score_candidate( const aig_network& rc, const candidate_variant& cand, const rank_config& cfg )
{
  score_record s;
  s.s_sim = sim_dissimilarity( rc, cand.cone_net, cfg.n_words, cfg.seed );
  s.s_and = and_disparity( rc, cand.cone_net );
  s.s_pearson = pearson_dissimilarity( rc, cand.cone_net ).score;
  s.s_hybrid = ( s.s_sim + s.s_and + s.s_pearson ) / 3.0;
  s.q_obj = quality_score( rc, cand.cone_net, cfg.mode );
  s.total = cfg.alpha * s.s_hybrid + cfg.beta * s.q_obj;
  return s;
}

std::vector<ranked_variant> rank_candidates( const aig_network& rc, std::vector<candidate_variant> candidates,
                                             const rank_config& cfg )
{
  if ( cfg.alpha < 0.0 || cfg.beta < 0.0 )
    throw std::invalid_argument( "rank weights must be non-negative" );
  if ( cfg.topk == 0 )
    throw std::invalid_argument( "topk must be at least 1" );

  std::vector<ranked_variant> scored;
  scored.reserve( candidates.size() );
  for ( auto& c : candidates )
  {
    const auto s = score_candidate( rc, c, cfg );
    scored.push_back( { std::move( c ), s } );
  }
  std::stable_sort( scored.begin(), scored.end(), []( const ranked_variant& a, const ranked_variant& b ) {
    if ( a.score.total != b.score.total )
      return a.score.total > b.score.total;
    if ( a.score.s_hybrid != b.score.s_hybrid )
      return a.score.s_hybrid > b.score.s_hybrid;
    if ( a.variant.size != b.variant.size )
      return a.variant.size < b.variant.size;
    return a.variant.origin < b.variant.origin;
  } );
  if ( scored.size() > cfg.topk )
    scored.resize( cfg.topk );
  return scored;
}

} // namespace aigc
