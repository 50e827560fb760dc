#include <doctest.h>

#include <aigc/kernels.hpp>

#include <random>
#include <vector>

using namespace aigc;

namespace
{

std::vector<uint64_t> random_words( std::mt19937_64& rng, std::size_t n )
{
  std::vector<uint64_t> v( n );
  for ( auto& w : v )
    w = rng();
  return v;
}

} // namespace

TEST_SUITE( "kernels" )
{

TEST_CASE( "scalar reference kernels compute the documented word operations" )
{
  const std::vector<uint64_t> a{ 0b1100 }, b{ 0b1010 };
  std::vector<uint64_t> d( 1 );
  kernels::scalar::and_words( d.data(), a.data(), 0, b.data(), 0, 1 );
  CHECK( d[0] == 0b1000 );
  kernels::scalar::and_words( d.data(), a.data(), ~uint64_t{ 0 }, b.data(), 0, 1 );
  CHECK( d[0] == 0b0010 );

  const std::vector<uint64_t> sel{ 0b0101 }, hi{ 0b1111 }, lo{ 0b0000 };
  kernels::scalar::mux_words( d.data(), sel.data(), hi.data(), lo.data(), 1 );
  CHECK( d[0] == 0b0101 );

  const std::vector<uint64_t> x{ 1, 2, 3 }, y{ 1, 2, 4 };
  CHECK( kernels::scalar::first_difference( x.data(), y.data(), 0, 3 ) == 2 );
  CHECK( kernels::scalar::first_difference( x.data(), x.data(), 0, 3 ) == 3 );
  CHECK( kernels::scalar::first_difference( x.data(), x.data(), ~uint64_t{ 0 }, 3 ) == 0 );
}

TEST_CASE( "every available SIMD variant matches the scalar reference" )
{
  std::mt19937_64 rng( 7 );
  const auto original = kernels::active_isa();
  for ( auto i : { kernels::isa::avx2, kernels::isa::neon } )
  {
    if ( !kernels::isa_available( i ) )
    {
      MESSAGE( "variant " << kernels::isa_name( i ) << " not available on this machine" );
      continue;
    }
    for ( std::size_t n : { 0u, 1u, 3u, 4u, 5u, 16u, 17u, 63u, 1024u } )
    {
      const auto a = random_words( rng, n ), b = random_words( rng, n ), c = random_words( rng, n );
      for ( int mask = 0; mask < 4; ++mask )
      {
        const bool ac = mask & 1, bc = mask & 2;
        std::vector<uint64_t> ref( n ), got( n );
        REQUIRE( kernels::force_isa( kernels::isa::scalar ) );
        kernels::and_words( ref, a, ac, b, bc );
        REQUIRE( kernels::force_isa( i ) );
        kernels::and_words( got, a, ac, b, bc );
        CHECK( ref == got );
      }
      std::vector<uint64_t> ref( n ), got( n );
      REQUIRE( kernels::force_isa( kernels::isa::scalar ) );
      kernels::mux_words( ref, a, b, c );
      REQUIRE( kernels::force_isa( i ) );
      kernels::mux_words( got, a, b, c );
      CHECK( ref == got );

      auto d = a;
      if ( n > 0 )
        d[n - 1] ^= 1u << 5;
      for ( bool compl_ : { false, true } )
      {
        REQUIRE( kernels::force_isa( kernels::isa::scalar ) );
        const auto r1 = kernels::first_difference( a, d, compl_ );
        const auto r2 = kernels::first_difference( a, a, compl_ );
        REQUIRE( kernels::force_isa( i ) );
        CHECK( kernels::first_difference( a, d, compl_ ) == r1 );
        CHECK( kernels::first_difference( a, a, compl_ ) == r2 );
      }
    }
  }
  kernels::force_isa( original );
}

TEST_CASE( "mux kernel tolerates the destination aliasing the low operand" )
{
  std::mt19937_64 rng( 3 );
  for ( auto i : { kernels::isa::scalar, kernels::isa::avx2, kernels::isa::neon } )
  {
    if ( !kernels::isa_available( i ) )
      continue;
    const auto original = kernels::active_isa();
    kernels::force_isa( i );
    const auto sel = random_words( rng, 37 ), hi = random_words( rng, 37 );
    auto lo = random_words( rng, 37 );
    std::vector<uint64_t> expected( 37 );
    for ( std::size_t w = 0; w < 37; ++w )
      expected[w] = ( sel[w] & hi[w] ) | ( ~sel[w] & lo[w] );
    kernels::mux_words( lo, sel, hi, lo );
    CHECK( lo == expected );
    kernels::force_isa( original );
  }
}

TEST_CASE( "forcing an unavailable variant is refused" )
{
  const auto original = kernels::active_isa();
  for ( auto i : { kernels::isa::avx2, kernels::isa::neon } )
  {
    if ( !kernels::isa_available( i ) )
    {
      CHECK_FALSE( kernels::force_isa( i ) );
      CHECK( kernels::active_isa() == original );
    }
  }
  CHECK( kernels::isa_available( kernels::isa::scalar ) );
}

}
