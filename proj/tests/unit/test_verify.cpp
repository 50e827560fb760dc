#include <doctest.h>

#include <aigc/simulate.hpp>
#include <aigc/verify.hpp>

#include "test_util.hpp"
#include <circuits.hpp>

#include <random>

using namespace aigc;

namespace
{

aig_network two_input( bool use_or, bool swap = false )
{
  aig_network net;
  const auto a = net.create_pi();
  const auto b = net.create_pi();
  if ( use_or )
    net.create_po( !net.create_and( !a, !b ) );
  else
    net.create_po( swap ? net.create_and( b, a ) : net.create_and( a, b ) );
  return net;
}

/* replays one assignment through plain simulation; true if some output differs */
bool replay_differs( const aig_network& a, const aig_network& b, const cec_result& r )
{
  pattern_set p( a.num_pis(), 1 );
  for ( uint32_t i = 0; i < a.num_pis(); ++i )
    p[i][0] = r.pattern[i] ? 1u : 0u;
  const auto sa = simulate( a, p );
  const auto sb = simulate( b, p );
  return ( sa.value( a.po_at( r.output ) )[0] & 1u ) != ( sb.value( b.po_at( r.output ) )[0] & 1u );
}

} // namespace

TEST_SUITE( "verify" )
{
  TEST_CASE( "structurally identical and commuted networks are equivalent" )
  {
    const auto adder = circuits::ripple_adder( 4 );
    CHECK( cec_exhaustive( adder, adder ).status == cec_status::equivalent );
    CHECK( cec_exhaustive( two_input( false ), two_input( false, true ) ).status == cec_status::equivalent );
    CHECK( cec_exhaustive( circuits::and_chain( 12 ), circuits::balanced_and( 12 ) ).status == cec_status::equivalent );
  }

  TEST_CASE( "AND vs OR: counterexample is one of the two differing rows" )
  {
    const auto r = cec_exhaustive( two_input( false ), two_input( true ) );
    REQUIRE( r.failed() );
    /* 4-row oracle: first differing row in ascending order is a=1,b=0 (index 1) */
    std::vector<std::vector<bool>> differing;
    for ( uint32_t m = 0; m < 4; ++m )
    {
      const bool a = m & 1u, b = m & 2u;
      if ( ( a && b ) != ( a || b ) )
        differing.push_back( { a, b } );
    }
    REQUIRE( differing.size() == 2u );
    CHECK( ( r.pattern == differing[0] || r.pattern == differing[1] ) );
    CHECK( replay_differs( two_input( false ), two_input( true ), r ) );
    CHECK( r.pattern_string().size() == 2u );
  }

  TEST_CASE( "exhaustive check agrees with truth-table comparison" )
  {
    std::mt19937_64 rng( 17 );
    for ( int trial = 0; trial < 40; ++trial )
    {
      const auto pis = 3 + static_cast<uint32_t>( rng() % 12 );
      const auto a = circuits::random_network( pis, 30, rng(), 6 );
      auto b = a;
      if ( trial % 2 )
      {
        const auto po = static_cast<uint32_t>( rng() % b.num_pos() );
        b.replace_po( po, b.create_and( b.po_at( po ), node_ref{ b.pis()[rng() % pis], ( rng() & 1u ) != 0 } ) );
      }
      const bool same = po_truth_tables( a ) == po_truth_tables( b );
      const auto r = cec_exhaustive( a, b );
      CHECK( ( r.status == cec_status::equivalent ) == same );
      if ( r.failed() )
        CHECK( replay_differs( a, b, r ) );
    }
  }

  TEST_CASE( "random check: equivalent pairs are never refuted" )
  {
    const auto a = circuits::and_chain( 24 );
    const auto b = circuits::balanced_and( 24 );
    for ( uint64_t seed : { 0u, 1u, 99u } )
      CHECK( cec_random( a, b, 4, seed ).status == cec_status::no_mismatch_observed );
  }

  TEST_CASE( "random check finds a 50% difference within 16 words" )
  {
    aig_network a;
    std::vector<node_ref> x;
    for ( int i = 0; i < 30; ++i )
      x.push_back( a.create_pi() );
    a.create_po( a.create_xor( x[3], x[17] ) );
    aig_network b;
    for ( int i = 0; i < 30; ++i )
      b.create_pi();
    b.create_po( const0 );
    const auto r = cec_random( a, b, 16, 5 );
    REQUIRE( r.failed() );
    CHECK( replay_differs( a, b, r ) );
    const auto again = cec_random( a, b, 16, 5 );
    CHECK( again.pattern == r.pattern );
    CHECK( again.output == r.output );
  }

  TEST_CASE( "random check is deterministic and chunked consistently" )
  {
    const auto a = circuits::random_network( 20, 150, 3 );
    auto b = a;
    b.replace_po( 0, b.create_and( b.po_at( 0 ), b.create_and( node_ref{ b.pis()[0], false }, node_ref{ b.pis()[1], true } ) ) );
    const auto r1 = cec_random( a, b, 200, 11 );
    const auto r2 = cec_random( a, b, 200, 11 );
    CHECK( r1.status == r2.status );
    CHECK( r1.pattern == r2.pattern );
    if ( r1.failed() )
      CHECK( replay_differs( a, b, r1 ) );
  }

  TEST_CASE( "arity errors" )
  {
    const auto a = circuits::and_chain( 4 );
    const auto b = circuits::and_chain( 5 );
    CHECK_THROWS_AS( cec_exhaustive( a, b ), verify_error );
    CHECK_THROWS_AS( cec_random( a, b, 1, 0 ), verify_error );
    auto c = circuits::and_chain( 4 );
    c.create_po( const0 );
    CHECK_THROWS_AS( cec_exhaustive( a, c ), verify_error );
    CHECK_THROWS_AS( cec_exhaustive( circuits::and_chain( 17 ), circuits::and_chain( 17 ) ), verify_error );
  }

  TEST_CASE( "automatic mode picks exhaustive or random" )
  {
    CHECK( cec_auto( circuits::and_chain( 16 ), circuits::balanced_and( 16 ) ).status == cec_status::equivalent );
    CHECK( cec_auto( circuits::and_chain( 17 ), circuits::balanced_and( 17 ) ).status
           == cec_status::no_mismatch_observed );
  }

  TEST_CASE( "corpus files are self-equivalent" )
  {
    for ( const auto& path : testing::corpus_files() )
    {
      const auto net = read_aiger_file( path );
      CHECK( cec_auto( net, net ).status != cec_status::counterexample );
    }
  }
}
