#include <aigc/verify.hpp>

#include <aigc/kernels.hpp>
#include <aigc/mutate.hpp>

#include <algorithm>
#include <bit>

namespace aigc
{

namespace
{

constexpr std::size_t chunk_words = 64;

void check_arity( const aig_network& a, const aig_network& b )
{
  if ( a.num_pis() != b.num_pis() )
    throw verify_error( "PI count mismatch: " + std::to_string( a.num_pis() ) + " vs " +
                        std::to_string( b.num_pis() ) );
  if ( a.num_pos() != b.num_pos() )
    throw verify_error( "PO count mismatch: " + std::to_string( a.num_pos() ) + " vs " +
                        std::to_string( b.num_pos() ) );
}

/* compares the first `valid` patterns; returns true and fills `res` on a mismatch */
bool compare( const output_simulator& a, const output_simulator& b, const pattern_set& patterns, uint64_t valid,
              cec_result& res )
{
  const auto va = a( patterns );
  const auto vb = b( patterns );
  if ( va.size() != vb.size() )
    throw verify_error( "output count mismatch: " + std::to_string( va.size() ) + " vs " +
                        std::to_string( vb.size() ) );

  uint64_t best_pattern = ~uint64_t{ 0 };
  uint32_t best_output = 0;
  for ( uint32_t o = 0; o < va.size(); ++o )
  {
    const auto w = kernels::first_difference( va[o], vb[o], false );
    if ( w == va[o].size() )
      continue;
    for ( std::size_t i = w; i < va[o].size(); ++i )
    {
      uint64_t diff = va[o][i] ^ vb[o][i];
      if ( i * 64 + 64 > valid )
      {
        const auto keep = valid > i * 64 ? valid - i * 64 : 0;
        diff &= keep >= 64 ? ~uint64_t{ 0 } : ( ( uint64_t{ 1 } << keep ) - 1 );
      }
      if ( diff == 0 )
        continue;
      const uint64_t p = i * 64 + static_cast<uint64_t>( std::countr_zero( diff ) );
      if ( p < best_pattern )
      {
        best_pattern = p;
        best_output = o;
      }
      break;
    }
  }
  if ( best_pattern == ~uint64_t{ 0 } )
    return false;

  res.status = cec_status::counterexample;
  res.output = best_output;
  res.pattern.resize( patterns.num_pis() );
  for ( uint32_t i = 0; i < patterns.num_pis(); ++i )
    res.pattern[i] = patterns.get_bit( i, best_pattern );
  return true;
}

} // namespace

std::string_view cec_status_name( cec_status s )
{
  switch ( s )
  {
  case cec_status::equivalent:
    return "equivalent";
  case cec_status::no_mismatch_observed:
    return "no_mismatch_observed";
  case cec_status::counterexample:
    return "counterexample";
  }
  return "unknown";
}

std::string cec_result::pattern_string() const
{
  std::string s;
  s.reserve( pattern.size() );
  for ( bool b : pattern )
    s.push_back( b ? '1' : '0' );
  return s;
}

output_simulator aig_simulator( const aig_network& net )
{
  return [&net]( const pattern_set& patterns ) {
    const auto sim = simulate( net, patterns );
    std::vector<std::vector<uint64_t>> out;
    out.reserve( net.num_pos() );
    for ( auto po : net.pos() )
      out.push_back( sim.value( po ) );
    return out;
  };
}

cec_result check_exhaustive( const output_simulator& a, const output_simulator& b, uint32_t num_pis )
{
  if ( num_pis > 16 )
    throw verify_error( "exhaustive check supports at most 16 PIs, got " + std::to_string( num_pis ) );
  cec_result res;
  compare( a, b, exhaustive_patterns( num_pis ), uint64_t{ 1 } << num_pis, res );
  return res;
}

cec_result check_random( const output_simulator& a, const output_simulator& b, uint32_t num_pis,
                         std::size_t n_words, uint64_t seed )
{
  cec_result res;
  res.status = cec_status::no_mismatch_observed;
  for ( std::size_t done = 0, chunk = 0; done < n_words; done += chunk_words, ++chunk )
  {
    const auto words = std::min( chunk_words, n_words - done );
    const auto patterns = random_patterns( num_pis, words, derive_seed( seed, static_cast<uint32_t>( chunk ) ) );
    if ( compare( a, b, patterns, words * 64, res ) )
      return res;
  }
  return res;
}

cec_result cec_exhaustive( const aig_network& a, const aig_network& b )
{
  check_arity( a, b );
  if ( a.num_pis() > 16 )
    throw verify_error( "exhaustive check supports at most 16 PIs, got " + std::to_string( a.num_pis() ) );
  return check_exhaustive( aig_simulator( a ), aig_simulator( b ), a.num_pis() );
}

cec_result cec_random( const aig_network& a, const aig_network& b, std::size_t n_words, uint64_t seed )
{
  check_arity( a, b );
  return check_random( aig_simulator( a ), aig_simulator( b ), a.num_pis(), n_words, seed );
}

cec_result cec_auto( const aig_network& a, const aig_network& b, uint64_t seed )
{
  check_arity( a, b );
  if ( a.num_pis() <= 16 )
    return cec_exhaustive( a, b );
  return cec_random( a, b, 1024, seed );
}

} // namespace aigc
