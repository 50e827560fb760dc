#include <doctest.h>

#include <aigc/flow.hpp>
#include <aigc/stats.hpp>

#include "test_util.hpp"
#include <circuits.hpp>

#include <cmath>
#include <sstream>

using namespace aigc;

TEST_SUITE( "flow" )
{
  TEST_CASE( "chain8 with small thresholds improves depth at k = 2" )
  {
    flow_config cfg;
    cfg.k = 2;
    cfg.thresholds = { 5 };
    const auto res = run_flow( testing::corpus_network( "chain8.aag" ), cfg );
    CHECK( res.ok() );
    CHECK( res.mapped_without.mapped_depth == 7u );
    CHECK( res.mapped_with.mapped_depth == 3u );
    CHECK( res.validation.ok() );
    REQUIRE( res.verify_with );
    CHECK( res.verify_with->status == cec_status::equivalent );
  }

  TEST_CASE( "default thresholds select nothing on chain8 and mapping is unchanged" )
  {
    const auto res = run_flow( testing::corpus_network( "chain8.aag" ), {} );
    CHECK( res.cones.empty() );
    CHECK( res.classes.classes == 0u );
    CHECK( res.mapped_with.mapped_depth == res.mapped_without.mapped_depth );
    CHECK( res.mapped_with.lut_count == res.mapped_without.lut_count );
  }

  TEST_CASE( "empty network" )
  {
    const auto res = run_flow( testing::corpus_network( "empty.aag" ), {} );
    CHECK( res.ok() );
    CHECK( res.classes.classes == 0u );
    CHECK( res.mapped_with.lut_count == 0u );
  }

  TEST_CASE( "report is deterministic and timings add up" )
  {
    flow_config cfg;
    cfg.seed = 7;
    cfg.thresholds = { 30, 15, 8 };
    const auto net = testing::corpus_network( "rand12_120.aag" );
    const auto a = run_flow( net, cfg );
    const auto b = run_flow( net, cfg );
    CHECK( format_report( a, cfg, "x" ) == format_report( b, cfg, "x" ) );
    CHECK( write_choice_network( a.choices ) == write_choice_network( b.choices ) );
    const auto& t = a.timings;
    CHECK( std::fabs( t.cone_selection + t.cc_generation + t.filtering + t.mapping - t.total ) <= 1.0 );
    const auto text = format_timings( t );
    CHECK( text.find( "time.total_ms: " ) != std::string::npos );
    CHECK( format_report( a, cfg, "x" ).find( "time." ) == std::string::npos );
  }

  TEST_CASE( "parallel generation gives the same result" )
  {
    flow_config cfg;
    cfg.thresholds = { 30, 15, 8 };
    const auto net = testing::corpus_network( "rand16_300.aag" );
    const auto serial = run_flow( net, cfg );
    cfg.jobs = 4;
    const auto parallel = run_flow( net, cfg );
    cfg.jobs = 1;
    CHECK( format_report( serial, cfg, "x" ) == format_report( parallel, cfg, "x" ) );
  }

  TEST_CASE( "every corpus circuit passes end to end in both modes" )
  {
    for ( const auto& path : testing::corpus_files() )
    {
      CAPTURE( path.filename().string() );
      const auto net = read_network( path );
      for ( auto mode : { opt_mode::delay, opt_mode::area } )
      {
        flow_config cfg;
        cfg.mode = mode;
        cfg.thresholds = { 30, 15, 8 };
        const auto res = run_flow( net, cfg );
        CHECK( res.ok() );
        CHECK( res.validation.ok() );
        if ( mode == opt_mode::delay )
          CHECK( res.mapped_with.mapped_depth <= res.mapped_without.mapped_depth );
        for ( const auto& c : res.cones )
          CHECK( c.rejected == 0u );
      }
    }
  }

  TEST_CASE( "configuration validation" )
  {
    flow_config cfg;
    CHECK_NOTHROW( validate( cfg ) );
    cfg.k = 1;
    CHECK_THROWS_AS( validate( cfg ), flow_error );
    cfg = {};
    cfg.thresholds = { 10, 20 };
    CHECK_THROWS_AS( validate( cfg ), flow_error );
    cfg = {};
    cfg.topk = 0;
    CHECK_THROWS_AS( validate( cfg ), flow_error );
    cfg = {};
    cfg.alpha = -1;
    CHECK_THROWS_AS( validate( cfg ), flow_error );
    cfg = {};
    cfg.nwords = 0;
    CHECK_THROWS_AS( validate( cfg ), flow_error );
  }

  TEST_CASE( "improvement and geomean arithmetic" )
  {
    CHECK( improvement( 10, 10 ) == 0.0 );
    CHECK( improvement( 0, 0 ) == 0.0 );
    CHECK( improvement( 8, 6 ) == doctest::Approx( 25.0 ) );
    CHECK( improvement( 4, 5 ) == doctest::Approx( -25.0 ) );
    CHECK( geomean( { 2, 8 } ) == doctest::Approx( 4.0 ) );
    CHECK( geomean( { 0, 4 } ) == doctest::Approx( 2.0 ) );
  }

  TEST_CASE( "bench over three toy circuits" )
  {
    const auto dir = testing::scratch_dir( "bench3" );
    write_file( dir / "a.aag", write_aiger( circuits::and_chain( 8 ) ) );
    write_file( dir / "b.aag", write_aiger( circuits::ripple_adder( 3 ) ) );
    write_file( dir / "c.aag", write_aiger( circuits::balanced_and( 6 ) ) );
    write_file( dir / "notes.txt", "ignored" );
    flow_config cfg;
    cfg.thresholds = { 5 };
    const auto rows = run_bench( dir, cfg );
    REQUIRE( rows.size() == 3u );
    CHECK( rows[0].name == "a.aag" );
    CHECK( rows[2].name == "c.aag" );
    for ( const auto& r : rows )
    {
      CHECK( r.ok );
      CHECK( r.depth_with <= r.depth_without );
    }
    const auto table = format_bench( rows, false );
    std::istringstream in( table );
    std::string line;
    std::vector<std::string> lines;
    while ( std::getline( in, line ) )
      lines.push_back( line );
    REQUIRE( lines.size() == 6u );
    CHECK( lines[4].rfind( "geomean", 0 ) == 0u );
    CHECK( lines[5].rfind( "impr%", 0 ) == 0u );
    CHECK( table.find( "runtime" ) == std::string::npos );
  }

  TEST_CASE( "identical results report zero improvement" )
  {
    std::vector<bench_row> rows( 2 );
    rows[0] = { "x", true, "", 4, 1, 10, 5, 5, 7, 7, 0, 0, 1.0 };
    rows[1] = { "y", true, "", 4, 1, 10, 3, 3, 2, 2, 0, 0, 1.0 };
    const auto table = format_bench( rows );
    const auto pos = table.find( "impr%" );
    REQUIRE( pos != std::string::npos );
    CHECK( table.substr( pos ).find( "0.00" ) != std::string::npos );
    CHECK( table.substr( pos ).find( "-0.00" ) == std::string::npos );
  }

  TEST_CASE( "read_network dispatches on extension" )
  {
    const auto dir = testing::scratch_dir( "readnet" );
    const auto net = circuits::ripple_adder( 2 );
    write_file( dir / "n.aig", write_aiger( net, { .binary = true } ) );
    CHECK( cec_exhaustive( read_network( dir / "n.aig" ), net ).status == cec_status::equivalent );
    const auto m = map_area( make_choice_network( net ), {} );
    write_file( dir / "n.blif", write_blif( m.netlist ) );
    CHECK( cec_exhaustive( read_network( dir / "n.blif" ), net ).status == cec_status::equivalent );
  }
}
