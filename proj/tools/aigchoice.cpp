#include <aigc/aiger.hpp>
#include <aigc/choice.hpp>
#include <aigc/flow.hpp>
#include <aigc/stats.hpp>
#include <aigc/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

namespace
{

enum exit_code : int
{
  exit_ok = 0,
  exit_verification = 1,
  exit_usage = 2,
  exit_io = 3
};

void add_flow_options( CLI::App& cmd, aigc::flow_config& cfg )
{
  const std::map<std::string, aigc::opt_mode> modes{ { "delay", aigc::opt_mode::delay },
                                                     { "area", aigc::opt_mode::area } };
  const std::map<std::string, aigc::verify_mode> verifies{ { "auto", aigc::verify_mode::automatic },
                                                           { "exhaustive", aigc::verify_mode::exhaustive },
                                                           { "random", aigc::verify_mode::random },
                                                           { "off", aigc::verify_mode::off } };
  cmd.add_option( "--mode", cfg.mode, "Optimization objective: delay or area" )
      ->transform( CLI::CheckedTransformer( modes, CLI::ignore_case ) );
  cmd.add_option( "--k", cfg.k, "LUT size" )->check( CLI::Range( 2, 8 ) );
  cmd.add_option( "--cut-limit", cfg.cut_limit, "Priority cuts kept per node" )->check( CLI::PositiveNumber );
  cmd.add_option( "--rounds", cfg.rounds, "Exact-area refinement passes" );
  cmd.add_option( "--thresholds", cfg.thresholds, "Descending cone size thresholds" )->delimiter( ',' );
  cmd.add_option( "--fanout-limit", cfg.fanout_limit, "Fanout bound T of low-fanout cones" )
      ->check( CLI::PositiveNumber );
  cmd.add_option( "--alpha", cfg.alpha, "Weight of the structural dissimilarity" )->check( CLI::NonNegativeNumber );
  cmd.add_option( "--beta", cfg.beta, "Weight of the quality objective" )->check( CLI::NonNegativeNumber );
  cmd.add_option( "--topk", cfg.topk, "Variants kept per cone" )->check( CLI::PositiveNumber );
  cmd.add_option( "--candidates", cfg.candidates, "Candidate pool size per cone" )->check( CLI::PositiveNumber );
  cmd.add_option( "--nwords", cfg.nwords, "64-bit simulation words for scoring and validation" )
      ->check( CLI::PositiveNumber );
  cmd.add_option( "--seed", cfg.seed, "Global random seed" );
  cmd.add_option( "--verify", cfg.verify, "Mapping verification: auto, exhaustive, random or off" )
      ->transform( CLI::CheckedTransformer( verifies, CLI::ignore_case ) );
  cmd.add_option( "--jobs", cfg.jobs, "Worker threads for candidate generation" )->check( CLI::PositiveNumber );
  cmd.add_option( "--max-iterations", cfg.limits.max_iterations, "Equality saturation iteration limit" );
  cmd.add_option( "--max-enodes", cfg.limits.max_enodes, "Equality saturation e-node limit" );
}

int cmd_run( const std::filesystem::path& input, const std::filesystem::path& out_dir, bool binary, bool quiet,
             const aigc::flow_config& cfg )
{
  aigc::aig_network net;
  try
  {
    net = aigc::read_network( input );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << input.string() << ": " << e.what() << '\n';
    return exit_io;
  }

  aigc::flow_result res;
  try
  {
    res = aigc::run_flow( net, cfg );
  }
  catch ( const aigc::flow_error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }

  const auto stem = input.stem().string();
  const auto report = aigc::format_report( res, cfg, input.filename().string() );
  const auto timings = aigc::format_timings( res.timings );
  try
  {
    std::filesystem::create_directories( out_dir );
    aigc::write_file( out_dir / ( stem + ( binary ? ".choice.aig" : ".choice.aag" ) ),
                      aigc::write_choice_network( res.choices, binary ) );
    aigc::write_file( out_dir / ( stem + ".mapped.blif" ), aigc::write_blif( res.mapped_with.netlist, stem ) );
    aigc::write_file( out_dir / ( stem + ".report.txt" ), report );
    aigc::write_file( out_dir / ( stem + ".timing.txt" ), timings );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  }

  if ( !quiet )
    std::cout << report << timings;
  if ( !res.ok() )
  {
    for ( const auto& m : res.validation.messages )
      std::cerr << "validation: " << m << '\n';
    return exit_verification;
  }
  return exit_ok;
}

int cmd_verify( const std::filesystem::path& a_path, const std::filesystem::path& b_path, bool force_random,
                std::size_t n_words, uint64_t seed )
{
  aigc::aig_network a, b;
  try
  {
    a = aigc::read_network( a_path );
    b = aigc::read_network( b_path );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  }

  aigc::cec_result r;
  try
  {
    if ( !force_random && a.num_pis() <= 16 && b.num_pis() <= 16 )
      r = aigc::cec_exhaustive( a, b );
    else
      r = aigc::cec_random( a, b, n_words, seed );
  }
  catch ( const aigc::verify_error& e )
  {
    std::cout << "mismatch: " << e.what() << '\n';
    return exit_verification;
  }

  switch ( r.status )
  {
  case aigc::cec_status::equivalent:
    std::cout << "equivalent (exhaustive, " << ( uint64_t{ 1 } << a.num_pis() ) << " patterns)\n";
    return exit_ok;
  case aigc::cec_status::no_mismatch_observed:
    std::cout << "no mismatch observed (random, " << 64 * n_words << " patterns, seed " << seed
              << "); equivalence not proven\n";
    return exit_ok;
  case aigc::cec_status::counterexample:
    break;
  }
  std::cout << "counterexample: output " << r.output << " differs\n";
  std::cout << "pattern: " << r.pattern_string() << '\n';
  return exit_verification;
}

int cmd_bench( const std::filesystem::path& dir, const std::filesystem::path& out, bool no_runtime,
               const aigc::flow_config& cfg )
{
  if ( !std::filesystem::is_directory( dir ) )
  {
    std::cerr << "error: " << dir.string() << " is not a directory\n";
    return exit_io;
  }
  try
  {
    aigc::validate( cfg );
  }
  catch ( const aigc::flow_error& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const auto rows = aigc::run_bench( dir, cfg );
  for ( const auto& r : rows )
  {
    if ( !r.ok )
      std::cerr << "bench: " << r.name << ": " << r.error << '\n';
  }
  const auto table = aigc::format_bench( rows, !no_runtime );
  if ( out.empty() )
    std::cout << table;
  else
  {
    try
    {
      aigc::write_file( out, table );
    }
    catch ( const std::exception& e )
    {
      std::cerr << "error: " << e.what() << '\n';
      return exit_io;
    }
  }
  const bool all_ok = std::all_of( rows.begin(), rows.end(), []( const auto& r ) { return r.ok; } );
  return all_ok ? exit_ok : exit_verification;
}

int cmd_stats( const std::filesystem::path& path )
{
  std::string bytes;
  aigc::choice_network cn;
  try
  {
    bytes = aigc::read_file( path );
    if ( path.extension() == ".blif" )
      cn = aigc::make_choice_network( aigc::read_network( path ) );
    else
    {
      std::vector<std::string> comments;
      auto net = aigc::read_aiger( bytes, &comments );
      const bool has_choices = std::any_of( comments.begin(), comments.end(), []( const std::string& c ) {
        return c.find( "CHOICE-OUTPUTS" ) != std::string::npos;
      } );
      cn = has_choices ? aigc::read_choice_network( bytes ) : aigc::make_choice_network( std::move( net ) );
    }
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << path.string() << ": " << e.what() << '\n';
    return exit_io;
  }

  const auto& net = cn.net;
  const auto fanout = aigc::compute_fanout( net );
  uint32_t max_fanout = 0;
  for ( uint32_t n = 1; n < net.size(); ++n )
    max_fanout = std::max( max_fanout, fanout[n] );
  std::cout << "file: " << path.filename().string() << '\n';
  std::cout << "pis: " << net.num_pis() << '\n';
  std::cout << "pos: " << net.num_pos() << '\n';
  std::cout << "ands: " << net.num_ands() << '\n';
  std::cout << "depth: " << aigc::network_depth( net ) << '\n';
  std::cout << "max_fanout: " << max_fanout << '\n';
  const auto cs = aigc::class_stats( cn );
  std::cout << "classes: " << cs.classes << '\n';
  std::cout << "choices: " << cs.total_choices << '\n';
  for ( const auto& [k, n] : cs.histogram )
    std::cout << "histogram." << k << ": " << n << '\n';
  if ( !cn.classes.empty() )
  {
    const auto v = aigc::validate_choice_network( cn );
    std::cout << "valid: " << ( v.ok() ? "yes" : "no" ) << '\n';
  }
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Choice network construction and choice-aware LUT mapping for AIGs" };
  app.require_subcommand( 1 );

  aigc::flow_config run_cfg;
  std::string run_input;
  std::string run_out = ".";
  bool run_binary = false, run_quiet = false;
  auto* run = app.add_subcommand( "run", "Build a choice network, map it and write the results" );
  run->add_option( "input", run_input, "AIGER (.aag/.aig) or BLIF input" )->required();
  run->add_option( "-o,--out-dir", run_out, "Directory for the output files" );
  run->add_flag( "--binary", run_binary, "Write the choice network as binary AIGER" );
  run->add_flag( "-q,--quiet", run_quiet, "Do not print the report" );
  add_flow_options( *run, run_cfg );

  std::string va, vb;
  bool v_random = false;
  std::size_t v_words = 1024;
  uint64_t v_seed = 0;
  auto* verify = app.add_subcommand( "verify", "Check two networks for combinational equivalence" );
  verify->add_option( "a", va, "First network (.aag/.aig/.blif)" )->required();
  verify->add_option( "b", vb, "Second network (.aag/.aig/.blif)" )->required();
  verify->add_flag( "--random", v_random, "Force random simulation" );
  verify->add_option( "--nwords", v_words, "64-bit words of random patterns" )->check( CLI::PositiveNumber );
  verify->add_option( "--seed", v_seed, "Random seed" );

  aigc::flow_config bench_cfg;
  std::string bench_dir, bench_out;
  bool bench_no_runtime = false;
  auto* bench = app.add_subcommand( "bench", "Run the flow on every AIGER file of a directory" );
  bench->add_option( "dir", bench_dir, "Corpus directory" )->required();
  bench->add_option( "-o,--output", bench_out, "Write the table to a file instead of stdout" );
  bench->add_flag( "--no-runtime", bench_no_runtime, "Omit the runtime column" );
  add_flow_options( *bench, bench_cfg );

  std::string stats_input;
  auto* stats = app.add_subcommand( "stats", "Print network and choice statistics" );
  stats->add_option( "input", stats_input, "AIGER, choice AIGER or BLIF file" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const auto code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( *run )
      return cmd_run( run_input, run_out, run_binary, run_quiet, run_cfg );
    if ( *verify )
      return cmd_verify( va, vb, v_random, v_words, v_seed );
    if ( *bench )
      return cmd_bench( bench_dir, bench_out, bench_no_runtime, bench_cfg );
    if ( *stats )
      return cmd_stats( stats_input );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  }
  return exit_usage;
}
