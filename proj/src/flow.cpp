#include <aigc/flow.hpp>

#include <aigc/aiger.hpp>
#include <aigc/blif.hpp>
#include <aigc/stats.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace aigc
{

namespace
{

using clock_type = std::chrono::steady_clock;

double elapsed_ms( clock_type::time_point from, clock_type::time_point to )
{
  return std::chrono::duration<double, std::milli>( to - from ).count();
}

/* runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first exception */
template<typename Fn>
void parallel_for( std::size_t n, uint32_t jobs, Fn&& fn )
{
  if ( jobs <= 1 || n <= 1 )
  {
    for ( std::size_t i = 0; i < n; ++i )
      fn( i );
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  const auto count = std::min<std::size_t>( jobs, n );
  for ( std::size_t t = 0; t < count; ++t )
  {
    workers.emplace_back( [&] {
      for ( auto i = next++; i < n; i = next++ )
      {
        try
        {
          fn( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( error_mutex );
          if ( !error )
            error = std::current_exception();
        }
      }
    } );
  }
  for ( auto& w : workers )
    w.join();
  if ( error )
    std::rethrow_exception( error );
}

std::string fixed( double v, int digits = 6 )
{
  char buf[64];
  std::snprintf( buf, sizeof( buf ), "%.*f", digits, v );
  return buf;
}

std::optional<cec_result> verify_result( const aig_network& subject, const mapping_result& m,
                                         const flow_config& cfg )
{
  const output_simulator lhs = aig_simulator( subject );
  const output_simulator rhs = [&m]( const pattern_set& p ) { return simulate_netlist( m.netlist, p ); };
  switch ( cfg.verify )
  {
  case verify_mode::off:
    return std::nullopt;
  case verify_mode::exhaustive:
    return check_exhaustive( lhs, rhs, subject.num_pis() );
  case verify_mode::random:
    return check_random( lhs, rhs, subject.num_pis(), 1024, cfg.seed );
  case verify_mode::automatic:
    break;
  }
  return verify_mapping( subject, m, cfg.seed );
}

} // namespace

std::string_view verify_mode_name( verify_mode m )
{
  switch ( m )
  {
  case verify_mode::automatic:
    return "auto";
  case verify_mode::exhaustive:
    return "exhaustive";
  case verify_mode::random:
    return "random";
  case verify_mode::off:
    return "off";
  }
  return "unknown";
}

void validate( const flow_config& cfg )
{
  if ( cfg.k < 2 || cfg.k > 8 )
    throw flow_error( "--k must be in [2, 8]" );
  if ( cfg.cut_limit == 0 )
    throw flow_error( "--cut-limit must be positive" );
  if ( cfg.topk == 0 )
    throw flow_error( "--topk must be positive" );
  if ( cfg.candidates == 0 )
    throw flow_error( "--candidates must be positive" );
  if ( cfg.nwords == 0 )
    throw flow_error( "--nwords must be positive" );
  if ( cfg.fanout_limit == 0 )
    throw flow_error( "--fanout-limit must be positive" );
  if ( cfg.jobs == 0 )
    throw flow_error( "--jobs must be positive" );
  if ( !( cfg.alpha >= 0.0 ) || !( cfg.beta >= 0.0 ) )
    throw flow_error( "--alpha and --beta must be non-negative" );
  selection_config sel;
  sel.thresholds = cfg.thresholds;
  sel.fanout_limit = cfg.fanout_limit;
  try
  {
    validate( sel );
  }
  catch ( const std::invalid_argument& e )
  {
    throw flow_error( std::string( "--thresholds: " ) + e.what() );
  }
}

bool flow_result::ok() const
{
  if ( !validation.ok() )
    return false;
  if ( verify_without && verify_without->failed() )
    return false;
  if ( verify_with && verify_with->failed() )
    return false;
  return true;
}

flow_result run_flow( const aig_network& subject, const flow_config& cfg )
{
  validate( cfg );
  if ( cfg.verify == verify_mode::exhaustive && subject.num_pis() > 16 )
    throw flow_error( "--verify exhaustive requires at most 16 PIs, input has " +
                      std::to_string( subject.num_pis() ) );

  flow_result res;
  res.subject = subject;
  const auto t0 = clock_type::now();

  /* cone selection */
  selection_config sel;
  sel.mode = cfg.mode;
  sel.thresholds = cfg.thresholds;
  sel.fanout_limit = cfg.fanout_limit;
  const auto rcs = select_representative_cones( subject, sel );
  for ( auto t : cfg.thresholds )
    res.per_threshold[t] = 0;
  for ( const auto& rc : rcs )
  {
    ++res.per_threshold[rc.threshold];
    if ( rc.kind == cone_kind::low_fanout )
      ++res.low_fanout_cones;
  }
  const auto t1 = clock_type::now();

  /* choice cone generation */
  std::vector<aig_network> rc_nets( rcs.size() );
  std::vector<candidate_pool> pools( rcs.size() );
  parallel_for( rcs.size(), cfg.jobs, [&]( std::size_t i ) {
    rc_nets[i] = extract_cone_aig( subject, rcs[i] );
    mutation_config mc;
    mc.mode = cfg.mode;
    mc.pool_size = cfg.candidates;
    mc.seed = derive_seed( cfg.seed, rcs[i].root );
    mc.limits = cfg.limits;
    pools[i] = generate_candidates( rc_nets[i], mc );
  } );
  const auto t2 = clock_type::now();

  /* filtering: ranking, merging and bad-choice removal */
  res.cones.resize( rcs.size() );
  parallel_for( rcs.size(), cfg.jobs, [&]( std::size_t i ) {
    auto& rec = res.cones[i];
    rec.rc = rcs[i];
    rec.rc_size = rc_nets[i].num_ands();
    rec.rc_depth = network_depth( rc_nets[i] );
    rec.generated = pools[i].generated;
    rec.admitted = static_cast<uint32_t>( pools[i].variants.size() );
    rec.rejected = pools[i].rejected;
    rec.saturation_iterations = pools[i].saturation_iterations;
    rec.saturation_stop = pools[i].saturation_stop;
    rank_config rk;
    rk.mode = cfg.mode;
    rk.alpha = cfg.alpha;
    rk.beta = cfg.beta;
    rk.topk = cfg.topk;
    rk.n_words = cfg.nwords;
    rk.seed = derive_seed( cfg.seed, rcs[i].root );
    rec.ranked = rank_candidates( rc_nets[i], std::move( pools[i].variants ), rk );
  } );

  std::vector<cone_selection> selections;
  selections.reserve( rcs.size() );
  for ( const auto& rec : res.cones )
  {
    cone_selection s{ rec.rc, {} };
    for ( const auto& r : rec.ranked )
      s.variants.push_back( r.variant );
    selections.push_back( std::move( s ) );
  }
  res.merged = build_choice_network( subject, selections );
  res.choices_before_filter = res.merged.num_choices();
  res.choices = remove_bad_choices( res.merged );
  res.validation = validate_choice_network( res.choices, cfg.nwords, cfg.seed );
  res.classes = class_stats( res.choices );
  const auto t3 = clock_type::now();

  /* mapping with and without choices, plus verification */
  mapper_config mc{ cfg.k, cfg.cut_limit, cfg.rounds };
  const auto plain = make_choice_network( subject );
  if ( cfg.mode == opt_mode::delay )
  {
    res.mapped_without = map_depth( plain, mc );
    res.mapped_with = map_depth( res.choices, mc );
  }
  else
  {
    res.mapped_without = map_area( plain, mc );
    res.mapped_with = map_area( res.choices, mc );
  }
  res.verify_without = verify_result( subject, res.mapped_without, cfg );
  res.verify_with = verify_result( subject, res.mapped_with, cfg );
  const auto t4 = clock_type::now();

  res.timings.cone_selection = elapsed_ms( t0, t1 );
  res.timings.cc_generation = elapsed_ms( t1, t2 );
  res.timings.filtering = elapsed_ms( t2, t3 );
  res.timings.mapping = elapsed_ms( t3, t4 );
  res.timings.total = elapsed_ms( t0, t4 );
  return res;
}

std::string format_report( const flow_result& res, const flow_config& cfg, std::string_view input_name )
{
  std::ostringstream os;
  const auto& s = res.subject;
  os << "input: " << input_name << '\n';
  os << "subject.pis: " << s.num_pis() << '\n';
  os << "subject.pos: " << s.num_pos() << '\n';
  os << "subject.ands: " << s.num_ands() << '\n';
  os << "subject.depth: " << network_depth( s ) << '\n';

  os << "config.mode: " << mode_name( cfg.mode ) << '\n';
  os << "config.k: " << cfg.k << '\n';
  os << "config.cut_limit: " << cfg.cut_limit << '\n';
  os << "config.rounds: " << cfg.rounds << '\n';
  os << "config.thresholds:";
  for ( std::size_t i = 0; i < cfg.thresholds.size(); ++i )
    os << ( i ? "," : " " ) << cfg.thresholds[i];
  os << '\n';
  os << "config.fanout_limit: " << cfg.fanout_limit << '\n';
  os << "config.alpha: " << fixed( cfg.alpha, 3 ) << '\n';
  os << "config.beta: " << fixed( cfg.beta, 3 ) << '\n';
  os << "config.topk: " << cfg.topk << '\n';
  os << "config.candidates: " << cfg.candidates << '\n';
  os << "config.nwords: " << cfg.nwords << '\n';
  os << "config.seed: " << cfg.seed << '\n';
  os << "config.verify: " << verify_mode_name( cfg.verify ) << '\n';

  os << "selection.cones: " << res.cones.size() << '\n';
  for ( const auto& [t, n] : res.per_threshold )
    os << "selection.threshold." << t << ": " << n << '\n';
  os << "selection.low_fanout_fallback: " << res.low_fanout_cones << '\n';

  uint32_t generated = 0, admitted = 0, rejected = 0;
  for ( const auto& c : res.cones )
  {
    generated += c.generated;
    admitted += c.admitted;
    rejected += c.rejected;
  }
  os << "candidates.generated: " << generated << '\n';
  os << "candidates.admitted: " << admitted << '\n';
  os << "candidates.rejected: " << rejected << '\n';

  for ( const auto& c : res.cones )
  {
    const auto prefix = "cone." + std::to_string( c.rc.root );
    os << prefix << ".kind: " << ( c.rc.kind == cone_kind::mffc ? "mffc" : "low_fanout" ) << '\n';
    os << prefix << ".threshold: " << c.rc.threshold << '\n';
    os << prefix << ".support: " << c.rc.support.size() << '\n';
    os << prefix << ".size: " << c.rc_size << '\n';
    os << prefix << ".depth: " << c.rc_depth << '\n';
    os << prefix << ".saturation: " << stop_reason_name( c.saturation_stop ) << " after "
       << c.saturation_iterations << " iterations\n";
    os << prefix << ".pool: generated " << c.generated << " admitted " << c.admitted << " rejected " << c.rejected
       << '\n';
    for ( std::size_t i = 0; i < c.ranked.size(); ++i )
    {
      const auto& r = c.ranked[i];
      os << prefix << ".variant." << i << ": " << provenance_name( r.variant.origin ) << " size " << r.variant.size
         << " depth " << r.variant.depth << " s_sim " << fixed( r.score.s_sim ) << " s_and "
         << fixed( r.score.s_and ) << " s_pearson " << fixed( r.score.s_pearson ) << " s_hybrid "
         << fixed( r.score.s_hybrid ) << " q_obj " << fixed( r.score.q_obj ) << " total "
         << fixed( r.score.total ) << '\n';
    }
  }

  os << "choices.merged: " << res.choices_before_filter << '\n';
  os << "choices.classes: " << res.classes.classes << '\n';
  os << "choices.total: " << res.classes.total_choices << '\n';
  for ( const auto& [k, n] : res.classes.histogram )
    os << "choices.histogram." << k << ": " << n << '\n';
  os << "choices.network_ands: " << res.choices.net.num_ands() << '\n';
  os << "validation.fanout_violations: " << res.validation.fanout_violations << '\n';
  os << "validation.quotient_acyclic: " << ( res.validation.quotient_acyclic ? "yes" : "no" ) << '\n';
  os << "validation.functional_violations: " << res.validation.functional_violations << '\n';

  os << "mapping.without_choices.luts: " << res.mapped_without.lut_count << '\n';
  os << "mapping.without_choices.depth: " << res.mapped_without.mapped_depth << '\n';
  os << "mapping.with_choices.luts: " << res.mapped_with.lut_count << '\n';
  os << "mapping.with_choices.depth: " << res.mapped_with.mapped_depth << '\n';
  os << "mapping.depth_improvement_pct: "
     << fixed( improvement( res.mapped_without.mapped_depth, res.mapped_with.mapped_depth ), 2 ) << '\n';
  os << "mapping.area_improvement_pct: "
     << fixed( improvement( res.mapped_without.lut_count, res.mapped_with.lut_count ), 2 ) << '\n';

  auto verdict = [&]( const std::optional<cec_result>& v ) -> std::string {
    if ( !v )
      return "skipped";
    if ( !v->failed() )
      return std::string( cec_status_name( v->status ) );
    return "counterexample output " + std::to_string( v->output ) + " pattern " + v->pattern_string();
  };
  os << "verify.without_choices: " << verdict( res.verify_without ) << '\n';
  os << "verify.with_choices: " << verdict( res.verify_with ) << '\n';
  os << "status: " << ( res.ok() ? "ok" : "failed" ) << '\n';
  return os.str();
}

std::string format_timings( const stage_timings& t )
{
  std::ostringstream os;
  os << "time.cone_selection_ms: " << fixed( t.cone_selection, 3 ) << '\n';
  os << "time.cc_generation_ms: " << fixed( t.cc_generation, 3 ) << '\n';
  os << "time.filtering_ms: " << fixed( t.filtering, 3 ) << '\n';
  os << "time.mapping_ms: " << fixed( t.mapping, 3 ) << '\n';
  os << "time.total_ms: " << fixed( t.total, 3 ) << '\n';
  return os.str();
}

aig_network read_network( const std::filesystem::path& path )
{
  const auto bytes = read_file( path );
  if ( path.extension() == ".blif" )
    return read_blif( bytes );
  return read_aiger( bytes );
}

std::vector<bench_row> run_bench( const std::filesystem::path& dir, const flow_config& cfg )
{
  std::vector<std::filesystem::path> files;
  for ( const auto& e : std::filesystem::directory_iterator( dir ) )
  {
    const auto ext = e.path().extension();
    if ( e.is_regular_file() && ( ext == ".aag" || ext == ".aig" ) )
      files.push_back( e.path() );
  }
  std::sort( files.begin(), files.end() );

  std::vector<bench_row> rows;
  for ( const auto& f : files )
  {
    bench_row row;
    row.name = f.filename().string();
    try
    {
      const auto net = read_network( f );
      row.pis = net.num_pis();
      row.pos = net.num_pos();
      row.ands = net.num_ands();
      const auto res = run_flow( net, cfg );
      row.depth_without = res.mapped_without.mapped_depth;
      row.depth_with = res.mapped_with.mapped_depth;
      row.luts_without = res.mapped_without.lut_count;
      row.luts_with = res.mapped_with.lut_count;
      row.classes = res.classes.classes;
      row.choices = res.classes.total_choices;
      row.runtime_ms = res.timings.total;
      row.ok = res.ok();
      if ( !row.ok )
        row.error = "verification failed";
    }
    catch ( const std::exception& e )
    {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back( std::move( row ) );
  }
  return rows;
}

double improvement( double without, double with )
{
  if ( without == 0.0 )
    return 0.0;
  return ( without - with ) / without * 100.0;
}

double geomean( const std::vector<double>& xs )
{
  if ( xs.empty() )
    return 0.0;
  double acc = 0.0;
  for ( auto x : xs )
    acc += std::log( std::max( x, 1.0 ) );
  return std::exp( acc / static_cast<double>( xs.size() ) );
}

std::string format_bench( const std::vector<bench_row>& rows, bool with_runtime )
{
  std::ostringstream os;
  os << "circuit\tpis\tpos\tands\tdepth\tdepth_choice\tdepth_impr%\tluts\tluts_choice\tluts_impr%\tclasses\tchoices";
  if ( with_runtime )
    os << "\truntime_ms";
  os << "\tstatus\n";

  std::vector<double> d0, d1, l0, l1;
  for ( const auto& r : rows )
  {
    os << r.name << '\t' << r.pis << '\t' << r.pos << '\t' << r.ands << '\t';
    if ( r.error.empty() || r.ok )
    {
      os << r.depth_without << '\t' << r.depth_with << '\t' << fixed( improvement( r.depth_without, r.depth_with ), 2 )
         << '\t' << r.luts_without << '\t' << r.luts_with << '\t'
         << fixed( improvement( r.luts_without, r.luts_with ), 2 ) << '\t' << r.classes << '\t' << r.choices;
    }
    else
    {
      os << "-\t-\t-\t-\t-\t-\t-\t-";
    }
    if ( with_runtime )
      os << '\t' << fixed( r.runtime_ms, 1 );
    os << '\t' << ( r.ok ? std::string( "ok" ) : "error: " + r.error ) << '\n';
    if ( r.ok )
    {
      d0.push_back( r.depth_without );
      d1.push_back( r.depth_with );
      l0.push_back( r.luts_without );
      l1.push_back( r.luts_with );
    }
  }
  const auto gd0 = geomean( d0 ), gd1 = geomean( d1 ), gl0 = geomean( l0 ), gl1 = geomean( l1 );
  os << "geomean\t-\t-\t-\t" << fixed( gd0, 3 ) << '\t' << fixed( gd1, 3 ) << "\t-\t" << fixed( gl0, 3 ) << '\t'
     << fixed( gl1, 3 ) << "\t-\t-\t-";
  if ( with_runtime )
    os << "\t-";
  os << "\t-\n";
  os << "impr%\t-\t-\t-\t-\t-\t" << fixed( improvement( gd0, gd1 ), 2 ) << "\t-\t-\t" << fixed( improvement( gl0, gl1 ), 2 )
     << "\t-\t-";
  if ( with_runtime )
    os << "\t-";
  os << "\t-\n";
  return os.str();
}

} // namespace aigc
