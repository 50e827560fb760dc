#include <doctest.h>

#include <aigc/egraph.hpp>
#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>
#include <aigc/verify.hpp>

#include <circuits.hpp>

#include <random>

using namespace aigc;

namespace
{

term_dag parse( std::string_view text, std::vector<std::string>& names )
{
  return parse_term( text, names );
}

aig_network single_output( const aig_network& net, uint32_t po )
{
  aig_network copy = net;
  const auto f = copy.po_at( po );
  copy.truncate_pos( 0 );
  copy.create_po( f );
  return cleanup_dangling( copy );
}

} // namespace

TEST_SUITE( "egraph" )
{
  TEST_CASE( "every default rule passes truth enumeration" )
  {
    const auto rules = default_rules();
    CHECK( rules.size() >= 7u );
    for ( const auto& r : rules )
    {
      CAPTURE( r.name );
      const auto vars = std::max( r.lhs.num_vars(), r.rhs.num_vars() );
      for ( uint64_t m = 0; m < ( uint64_t{ 1 } << vars ); ++m )
        CHECK( r.lhs.evaluate( r.lhs.root, m ) == r.rhs.evaluate( r.rhs.root, m ) );
    }
  }

  TEST_CASE( "unsound or unbound rules are rejected" )
  {
    CHECK_THROWS_AS( make_rule( "bad", "(and a b)", "(or a b)" ), rule_error );
    CHECK_THROWS_AS( make_rule( "unbound", "(and a (not a))", "(and c (not c))" ), rule_error );
    CHECK_NOTHROW( make_rule( "comm", "(and a b)", "(and b a)" ) );
  }

  TEST_CASE( "commutativity puts both orderings in the root class" )
  {
    std::vector<std::string> names;
    const auto seed = parse( "(and a b)", names );
    const auto res = saturate( seed, { make_rule( "comm", "(and x y)", "(and y x)" ) } );
    CHECK( res.reason == stop_reason::saturated );
    auto g = res.graph;
    const auto swapped = g.add_term( parse( "(and b a)", names ) );
    CHECK( g.find( swapped ) == g.find( res.root ) );
    CHECK( g.nodes( res.root ).size() == 2u );

    const auto vars = extract_variants( res.graph, res.root, 2, opt_mode::delay, 4, 0 );
    REQUIRE( !vars.empty() );
    for ( const auto& v : vars )
      CHECK( cec_exhaustive( v, term_to_aig( seed, 2 ) ).status == cec_status::equivalent );
  }

  TEST_CASE( "idempotence and associativity expose AND(a,b)" )
  {
    std::vector<std::string> names;
    const auto seed = parse( "(and a (and a b))", names );
    const std::vector<rewrite_rule> rules{ make_rule( "idem", "(and x x)", "x" ), make_rule( "assoc", "(and x (and y z))", "(and (and x y) z)" ) };
    const auto res = saturate( seed, rules );
    auto g = res.graph;
    const auto target = g.add_term( parse( "(and a b)", names ) );
    CHECK( g.find( target ) == g.find( res.root ) );

    /* 2-variable exhaustive oracle for the extracted minimum */
    const auto best = extract_variants( res.graph, res.root, 2, opt_mode::area, 1, 0 );
    REQUIRE( best.size() == 1u );
    CHECK( best[0].num_ands() == 1u );
    for ( uint64_t m = 0; m < 4; ++m )
      CHECK( po_truth_tables( best[0] )[0].get_bit( m ) == seed.evaluate( seed.root, m ) );
  }

  TEST_CASE( "limits stop saturation without error" )
  {
    const auto chain = circuits::and_chain( 12 );
    const auto seed = cone_to_term( chain );

    saturation_limits iters;
    iters.max_iterations = 1;
    const auto a = saturate( seed, default_rules(), iters );
    CHECK( a.reason == stop_reason::iteration_limit );
    CHECK( a.iterations == 1u );

    saturation_limits nodes;
    nodes.max_enodes = 40;
    const auto b = saturate( seed, default_rules(), nodes );
    CHECK( b.reason == stop_reason::node_limit );

    const auto vb = extract_variants( b.graph, b.root, 12, opt_mode::delay, 3, 1 );
    REQUIRE( !vb.empty() );
    for ( const auto& v : vb )
      CHECK( cec_exhaustive( v, chain ).status == cec_status::equivalent );
  }

  TEST_CASE( "sampled extractions from random 8-leaf cones are equivalent to the seed" )
  {
    std::mt19937_64 rng( 3 );
    for ( int trial = 0; trial < 50; ++trial )
    {
      const auto big = circuits::random_network( 8, 24, 900 + trial, 12 );
      const auto net = single_output( big, static_cast<uint32_t>( rng() % big.num_pos() ) );
      const auto seed = cone_to_term( net );
      const auto res = saturate( seed, default_rules() );
      const auto ref = po_truth_tables( net )[0];
      for ( auto mode : { opt_mode::delay, opt_mode::area } )
      {
        for ( const auto& v : extract_variants( res.graph, res.root, 8, mode, 4, trial ) )
        {
          REQUIRE( v.num_pis() == 8u );
          /* exhaustive 256-pattern oracle */
          CHECK( po_truth_tables( v )[0] == ref );
        }
      }
    }
  }

  TEST_CASE( "single AND has exactly one extraction" )
  {
    std::vector<std::string> names;
    const auto res = saturate( parse( "(and a b)", names ), default_rules() );
    CHECK( extract_variants( res.graph, res.root, 2, opt_mode::delay, 10, 5 ).size() == 1u );
  }

  TEST_CASE( "AND chain yields a depth-2 variant" )
  {
    const auto chain = circuits::and_chain( 4 );
    const auto res = saturate( cone_to_term( chain ), default_rules() );
    const auto vars = extract_variants( res.graph, res.root, 4, opt_mode::delay, 5, 0 );
    REQUIRE( !vars.empty() );
    CHECK( network_depth( vars.front() ) == 2u );
    for ( const auto& v : vars )
      CHECK( cec_exhaustive( v, chain ).status == cec_status::equivalent );
  }

  TEST_CASE( "extraction is deterministic per seed" )
  {
    const auto chain = circuits::and_chain( 8 );
    const auto res = saturate( cone_to_term( chain ), default_rules() );
    const auto a = extract_variants( res.graph, res.root, 8, opt_mode::delay, 6, 42 );
    const auto b = extract_variants( res.graph, res.root, 8, opt_mode::delay, 6, 42 );
    REQUIRE( a.size() == b.size() );
    for ( std::size_t i = 0; i < a.size(); ++i )
      CHECK( structurally_equal( a[i], b[i] ) );
    const auto c = extract_variants( res.graph, res.root, 8, opt_mode::delay, 6, 43 );
    REQUIRE( !c.empty() );
    CHECK( structurally_equal( a.front(), c.front() ) );
  }

  TEST_CASE( "empty e-graph is an error" )
  {
    egraph g;
    CHECK_THROWS_AS( extract_variants( g, 0, 0, opt_mode::delay, 1, 0 ), std::invalid_argument );
  }

  TEST_CASE( "class costs: minimum depth and size in the root class" )
  {
    const auto chain = circuits::and_chain( 8 );
    const auto res = saturate( cone_to_term( chain ), default_rules() );
    const auto delay = class_costs( res.graph, opt_mode::delay );
    const auto area = class_costs( res.graph, opt_mode::area );
    const auto root = res.graph.find( res.root );
    CHECK( delay.at( root ).size == 7u );
    CHECK( area.at( root ).size == 7u );
    CHECK( delay.at( root ).depth <= 7u );
    CHECK( delay.at( root ).depth >= 3u );
  }

  TEST_CASE( "merge and rebuild keep congruence" )
  {
    egraph g;
    const auto a = g.add( { term_op::var, 0, 0 } );
    const auto b = g.add( { term_op::var, 1, 0 } );
    const auto na = g.add( { term_op::not_op, a, 0 } );
    const auto nb = g.add( { term_op::not_op, b, 0 } );
    CHECK( g.find( na ) != g.find( nb ) );
    g.merge( a, b );
    g.rebuild();
    CHECK( g.find( na ) == g.find( nb ) );
    CHECK( g.num_classes() == 2u );
  }
}
