/*!
  \file acceptance.cpp
  \brief Acceptance checks 1-8; prints one PASS/FAIL line per criterion.

  Each check uses an oracle that does not share code with the component
  under test where practical: truth tables through the BLIF reader, explicit
  fanout recounts, a separate topological sort, and brute-force MFFC rules.
*/

#include <aigc/aiger.hpp>
#include <aigc/blif.hpp>
#include <aigc/choice.hpp>
#include <aigc/cone.hpp>
#include <aigc/flow.hpp>
#include <aigc/mapper.hpp>
#include <aigc/mutate.hpp>
#include <aigc/rank.hpp>
#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>
#include <aigc/verify.hpp>

#include <circuits.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace aigc;
namespace fs = std::filesystem;

namespace
{

/* pinned limits and tolerances */
constexpr double criterion1_time_limit_s = 60.0;
constexpr uint32_t criterion1_min_circuits = 20;
constexpr std::size_t criterion2_random_words = 16; /* 1024 patterns */
constexpr double criterion4_min_reduction = 0.5;
constexpr uint32_t criterion5_pairs = 1000;
constexpr double criterion5_pearson_tolerance = 1e-9;
constexpr double criterion5_reference_rho = 0.9234;
constexpr double criterion5_reference_rounding = 5e-5;
constexpr uint32_t criterion6_nodes = 1000;
constexpr double criterion8_time_limit_s = 120.0;
constexpr uint32_t criterion8_ands = 10000;
constexpr uint32_t criterion8_pis = 64;

using clock_type = std::chrono::steady_clock;

double seconds_since( clock_type::time_point t0 )
{
  return std::chrono::duration<double>( clock_type::now() - t0 ).count();
}

std::vector<fs::path> corpus_files()
{
  std::vector<fs::path> files;
  for ( const auto& e : fs::directory_iterator( AIGC_CORPUS_DIR ) )
  {
    if ( e.path().extension() == ".aag" || e.path().extension() == ".aig" )
      files.push_back( e.path() );
  }
  std::sort( files.begin(), files.end() );
  return files;
}

struct outcome
{
  bool pass{ true };
  std::string detail;
  std::vector<std::string> notes;
};

int failures = 0;

void report( int id, const std::string& title, const outcome& o )
{
  std::cout << ( o.pass ? "PASS" : "FAIL" ) << " criterion " << id << ": " << title;
  if ( !o.detail.empty() )
    std::cout << " (" << o.detail << ")";
  std::cout << '\n';
  for ( const auto& n : o.notes )
    std::cout << "  " << n << '\n';
  std::cout.flush();
  if ( !o.pass )
    ++failures;
}

/* configurations exercised on the corpus: the defaults, and smaller thresholds
   so that the small circuits also receive choices */
std::vector<std::pair<std::string, flow_config>> corpus_configs()
{
  std::vector<std::pair<std::string, flow_config>> cfgs;
  cfgs.emplace_back( "default", flow_config{} );
  flow_config small;
  small.thresholds = { 30, 15, 8 };
  cfgs.emplace_back( "thresholds 30,15,8", small );
  flow_config area = small;
  area.mode = opt_mode::area;
  cfgs.emplace_back( "area, thresholds 30,15,8", area );
  return cfgs;
}

std::vector<uint32_t> recount_fanout( const aig_network& net )
{
  std::vector<uint32_t> fo( net.size(), 0u );
  for ( uint32_t n = 1; n < net.size(); ++n )
  {
    if ( net.is_and( n ) )
    {
      ++fo[net.fanin0( n ).index()];
      ++fo[net.fanin1( n ).index()];
    }
  }
  for ( auto po : net.pos() )
    ++fo[po.index()];
  return fo;
}

/* Kahn's algorithm over the class-contracted graph; true if every node is ordered */
bool quotient_sorts( const choice_network& cn )
{
  std::vector<uint32_t> rep( cn.net.size() );
  for ( uint32_t n = 0; n < cn.net.size(); ++n )
    rep[n] = n;
  for ( const auto& cls : cn.classes )
  {
    for ( const auto& ch : cls.choices )
      rep[ch.node] = cls.representative;
  }
  std::vector<std::set<uint32_t>> succ( cn.net.size() );
  std::vector<uint32_t> indeg( cn.net.size(), 0u );
  std::vector<bool> present( cn.net.size(), false );
  for ( uint32_t n = 0; n < cn.net.size(); ++n )
    present[rep[n]] = true;
  for ( uint32_t n = 1; n < cn.net.size(); ++n )
  {
    if ( !cn.net.is_and( n ) )
      continue;
    for ( auto f : { cn.net.fanin0( n ), cn.net.fanin1( n ) } )
    {
      const auto from = rep[f.index()];
      const auto to = rep[n];
      if ( from == to )
        return false;
      if ( succ[from].insert( to ).second )
        ++indeg[to];
    }
  }
  std::queue<uint32_t> ready;
  uint32_t total = 0;
  for ( uint32_t n = 0; n < cn.net.size(); ++n )
  {
    if ( !present[n] )
      continue;
    ++total;
    if ( indeg[n] == 0 )
      ready.push( n );
  }
  uint32_t ordered = 0;
  while ( !ready.empty() )
  {
    const auto n = ready.front();
    ready.pop();
    ++ordered;
    for ( auto m : succ[n] )
    {
      if ( --indeg[m] == 0 )
        ready.push( m );
    }
  }
  return ordered == total;
}

/* ---------------------------------------------------------------- 1 */

outcome criterion1()
{
  outcome o;
  const auto t0 = clock_type::now();
  uint32_t circuits_checked = 0, runs = 0, mismatches = 0;
  for ( const auto& path : corpus_files() )
  {
    const auto net = read_aiger_file( path );
    if ( net.num_pis() > 16 )
      continue;
    ++circuits_checked;
    const auto golden = po_truth_tables( net );
    for ( const auto& [name, cfg] : corpus_configs() )
    {
      const auto res = run_flow( net, cfg );
      for ( const auto* m : { &res.mapped_with, &res.mapped_without } )
      {
        ++runs;
        /* independent path: BLIF text -> BLIF reader -> exhaustive truth tables */
        const auto back = read_blif( write_blif( m->netlist ) );
        if ( back.num_pis() != net.num_pis() || po_truth_tables( back ) != golden )
        {
          ++mismatches;
          o.notes.push_back( "mismatch: " + path.filename().string() + " [" + name + "]" );
        }
      }
    }
  }
  const double elapsed = seconds_since( t0 );
  o.pass = mismatches == 0 && circuits_checked >= criterion1_min_circuits && elapsed < criterion1_time_limit_s;
  std::ostringstream d;
  d << circuits_checked << " circuits, " << runs << " mapped netlists, " << mismatches << " mismatches, "
    << std::fixed;
  d.precision( 1 );
  d << elapsed << " s";
  o.detail = d.str();
  return o;
}

/* ---------------------------------------------------------------- 2 */

outcome criterion2()
{
  outcome o;
  std::vector<std::pair<std::string, aig_network>> inputs;
  for ( const auto& path : corpus_files() )
    inputs.emplace_back( path.filename().string(), read_aiger_file( path ) );
  for ( uint64_t s = 0; s < 3; ++s )
    inputs.emplace_back( "synthetic40_1500_" + std::to_string( s ), circuits::synthetic( 40, 1500, 70 + s ) );

  uint32_t cones = 0, variants = 0, exhaustive = 0, random = 0, mismatches = 0;
  for ( const auto& [name, net] : inputs )
  {
    for ( const auto& [cname, cfg] : corpus_configs() )
    {
      selection_config sel;
      sel.mode = cfg.mode;
      sel.thresholds = cfg.thresholds;
      sel.fanout_limit = cfg.fanout_limit;
      for ( const auto& rc : select_representative_cones( net, sel ) )
      {
        ++cones;
        const auto rc_net = extract_cone_aig( net, rc );
        mutation_config mc;
        mc.mode = cfg.mode;
        mc.pool_size = cfg.candidates;
        mc.seed = derive_seed( cfg.seed, rc.root );
        mc.limits = cfg.limits;
        const auto pool = generate_candidates( rc_net, mc );
        const auto golden = rc.support.size() <= 16 ? po_truth_tables( rc_net ) : std::vector<truth_table>{};
        for ( const auto& v : pool.variants )
        {
          ++variants;
          bool ok;
          if ( rc.support.size() <= 16 )
          {
            ++exhaustive;
            ok = v.cone_net.num_pis() == rc_net.num_pis() && po_truth_tables( v.cone_net ) == golden;
          }
          else
          {
            ++random;
            const auto pats = random_patterns( rc_net.num_pis(), criterion2_random_words, 0xacce97 + rc.root );
            ok = v.cone_net.num_pis() == rc_net.num_pis() &&
                 simulate( v.cone_net, pats ).value( v.cone_net.po_at( 0 ) ) ==
                     simulate( rc_net, pats ).value( rc_net.po_at( 0 ) );
          }
          if ( !ok )
          {
            ++mismatches;
            o.notes.push_back( "unsound variant: " + name + " root " + std::to_string( rc.root ) + " [" + cname + "]" );
          }
        }
      }
    }
  }
  o.pass = mismatches == 0 && variants > 0;
  o.detail = std::to_string( cones ) + " cones, " + std::to_string( variants ) + " admitted variants (" +
             std::to_string( exhaustive ) + " exhaustive, " + std::to_string( random ) + " random), " +
             std::to_string( mismatches ) + " mismatches";
  return o;
}

/* ---------------------------------------------------------------- 3 */

outcome criterion3()
{
  outcome o;
  uint32_t networks = 0, choices = 0, merged = 0, fanout_bad = 0, cyclic = 0;
  for ( const auto& path : corpus_files() )
  {
    const auto net = read_aiger_file( path );
    for ( const auto& [name, cfg] : corpus_configs() )
    {
      const auto res = run_flow( net, cfg );
      ++networks;
      merged += res.choices_before_filter;
      choices += res.choices.num_choices();
      const auto fo = recount_fanout( res.choices.net );
      for ( const auto& cls : res.choices.classes )
      {
        for ( const auto& ch : cls.choices )
        {
          if ( fo[ch.node] != 0 )
          {
            ++fanout_bad;
            o.notes.push_back( "choice with fanout: " + path.filename().string() + " node " + std::to_string( ch.node ) );
          }
        }
      }
      if ( !quotient_sorts( res.choices ) )
      {
        ++cyclic;
        o.notes.push_back( "quotient cycle: " + path.filename().string() + " [" + name + "]" );
      }
    }
  }
  o.pass = fanout_bad == 0 && cyclic == 0;
  o.detail = std::to_string( networks ) + " networks, " + std::to_string( merged ) + " merged / " +
             std::to_string( choices ) + " kept choices, " + std::to_string( fanout_bad ) + " with fanout, " +
             std::to_string( cyclic ) + " cyclic";
  return o;
}

/* ---------------------------------------------------------------- 4 */

outcome criterion4()
{
  outcome o;
  uint32_t comparisons = 0, violations = 0, improved = 0;
  for ( const auto& path : corpus_files() )
  {
    const auto net = read_aiger_file( path );
    for ( uint32_t k : { 2u, 4u, 6u } )
    {
      for ( const auto& thresholds : { std::vector<uint32_t>{ 800, 85, 30, 20, 15, 10 }, std::vector<uint32_t>{ 30, 15, 8 } } )
      {
        flow_config cfg;
        cfg.k = k;
        cfg.thresholds = thresholds;
        cfg.verify = verify_mode::off;
        const auto res = run_flow( net, cfg );
        const auto stripped = map_depth( strip_choices( res.choices ), { k, cfg.cut_limit, cfg.rounds } );
        ++comparisons;
        if ( res.mapped_with.mapped_depth > stripped.mapped_depth )
        {
          ++violations;
          o.notes.push_back( "depth increase: " + path.filename().string() + " k=" + std::to_string( k ) + " " +
                             std::to_string( stripped.mapped_depth ) + " -> " +
                             std::to_string( res.mapped_with.mapped_depth ) );
        }
        if ( res.mapped_with.mapped_depth < stripped.mapped_depth )
          ++improved;
      }
    }
  }

  /* constructed instance: 8-input AND chain plus its balanced variant */
  const auto chain = circuits::and_chain( 8 );
  const auto rc = mffc_cone_supp( chain, chain.po_at( 0 ).index() );
  candidate_variant bal;
  bal.cone_net = native_balance( extract_cone_aig( chain, rc ) );
  bal.size = bal.cone_net.num_ands();
  bal.depth = network_depth( bal.cone_net );
  const auto cn = remove_bad_choices( build_choice_network( chain, { { rc, { bal } } } ) );
  mapper_config k2{ 2, 8, 2 };
  const auto before = map_depth( strip_choices( cn ), k2 ).mapped_depth;
  const auto after = map_depth( cn, k2 ).mapped_depth;
  const double reduction = before ? 1.0 - static_cast<double>( after ) / before : 0.0;
  const bool chain_ok = reduction >= criterion4_min_reduction;

  o.pass = violations == 0 && chain_ok;
  std::ostringstream d;
  d << comparisons << " comparisons, " << violations << " depth increases, " << improved
    << " strict improvements; chain8 k=2 depth " << before << " -> " << after << " (" << std::fixed;
  d.precision( 1 );
  d << 100.0 * reduction << "% reduction)";
  o.detail = d.str();
  return o;
}

/* ---------------------------------------------------------------- 5 */

long double pearson_oracle( const std::vector<double>& x, const std::vector<double>& y )
{
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const long double n = x.size();
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>( x[i] ) * x[i];
    syy += static_cast<long double>( y[i] ) * y[i];
    sxy += static_cast<long double>( x[i] ) * y[i];
  }
  return ( n * sxy - sx * sy ) / std::sqrt( ( n * sxx - sx * sx ) * ( n * syy - sy * sy ) );
}

outcome criterion5()
{
  outcome o;
  std::mt19937_64 rng( 5 );
  uint32_t range_violations = 0, self_violations = 0;
  for ( uint32_t i = 0; i < criterion5_pairs; ++i )
  {
    const auto pis = 4 + static_cast<uint32_t>( rng() % 10 );
    const auto a = circuits::random_network( pis, 5 + rng() % 60, rng(), 4 + rng() % 30 );
    const auto b = circuits::random_network( pis, 1 + rng() % 60, rng(), 4 + rng() % 30 );
    const double s1 = sim_dissimilarity( a, b, 2, i );
    const double s2 = and_disparity( a, b );
    const double s3 = pearson_dissimilarity( a, b ).score;
    for ( double s : { s1, s2, s3 } )
    {
      if ( !( s >= 0.0 && s <= 1.0 ) )
        ++range_violations;
    }
    if ( sim_dissimilarity( a, a, 2, i ) != 0.0 || and_disparity( a, a ) != 0.0 ||
         std::fabs( pearson_dissimilarity( a, a ).score ) > 1e-12 )
      ++self_violations;
  }

  const std::vector<double> x{ 1, 2, 2, 4 };
  const std::vector<double> y{ 1, 3, 2, 4 };
  const double rho = pearson_abs_correlation( x, y );
  const double oracle = static_cast<double>( pearson_oracle( x, y ) );
  const bool pearson_ok = std::fabs( rho - oracle ) < criterion5_pearson_tolerance &&
                          std::fabs( rho - criterion5_reference_rho ) < criterion5_reference_rounding;

  o.pass = range_violations == 0 && self_violations == 0 && pearson_ok;
  std::ostringstream d;
  d.precision( 10 );
  d << criterion5_pairs << " pairs, " << range_violations << " range violations, " << self_violations
    << " non-zero self-pairs, rho " << rho << " vs oracle " << oracle;
  o.detail = d.str();
  return o;
}

/* ---------------------------------------------------------------- 6 */

outcome criterion6()
{
  outcome o;
  std::mt19937_64 rng( 6 );
  uint32_t checked = 0, violations = 0;
  while ( checked < criterion6_nodes )
  {
    const auto net = circuits::random_network( 6 + rng() % 20, 20 + rng() % 200, rng(), 4 + rng() % 40 );
    std::vector<std::vector<uint32_t>> fanouts( net.size() );
    std::vector<bool> is_po( net.size(), false );
    for ( auto po : net.pos() )
      is_po[po.index()] = true;
    std::vector<uint32_t> ands;
    net.foreach_and( [&]( uint32_t n ) {
      ands.push_back( n );
      fanouts[net.fanin0( n ).index()].push_back( n );
      fanouts[net.fanin1( n ).index()].push_back( n );
    } );

    for ( int pick = 0; pick < 25 && checked < criterion6_nodes; ++pick, ++checked )
    {
      const auto root = ands[rng() % ands.size()];
      const auto c = mffc_cone_supp( net, root );
      std::set<uint32_t> in( c.internal.begin(), c.internal.end() );

      /* TFI of the root */
      std::set<uint32_t> tfi;
      std::vector<uint32_t> stack{ root };
      while ( !stack.empty() )
      {
        const auto n = stack.back();
        stack.pop_back();
        if ( !net.is_and( n ) || !tfi.insert( n ).second )
          continue;
        stack.push_back( net.fanin0( n ).index() );
        stack.push_back( net.fanin1( n ).index() );
      }

      bool ok = in.count( root ) == 1;
      for ( auto n : in )
      {
        ok &= tfi.count( n ) == 1;
        if ( n == root )
          continue;
        /* containment: every fanout of an internal non-root node is internal */
        ok &= !is_po[n];
        for ( auto f : fanouts[n] )
          ok &= in.count( f ) == 1;
      }
      /* maximality: no excluded TFI node has all of its fanouts inside the cone */
      for ( auto n : tfi )
      {
        if ( in.count( n ) || is_po[n] )
          continue;
        bool all_inside = !fanouts[n].empty();
        for ( auto f : fanouts[n] )
          all_inside &= in.count( f ) == 1;
        ok &= !all_inside;
      }
      /* support: exactly the non-internal fanins of internal nodes */
      std::set<uint32_t> supp;
      for ( auto n : in )
      {
        for ( auto f : { net.fanin0( n ).index(), net.fanin1( n ).index() } )
        {
          if ( !in.count( f ) )
            supp.insert( f );
        }
      }
      ok &= std::vector<uint32_t>( supp.begin(), supp.end() ) == c.support;
      if ( !ok )
      {
        ++violations;
        if ( o.notes.size() < 5 )
          o.notes.push_back( "violation at root " + std::to_string( root ) );
      }
    }
  }
  o.pass = violations == 0;
  o.detail = std::to_string( checked ) + " random roots, " + std::to_string( violations ) + " violations";
  return o;
}

/* ---------------------------------------------------------------- 7 */

int run_command( const std::string& cmd )
{
  const int status = std::system( ( cmd + " >/dev/null 2>&1" ).c_str() );
  return WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
}

std::string slurp( const fs::path& p )
{
  return fs::exists( p ) ? read_file( p ) : std::string{};
}

outcome criterion7()
{
  outcome o;
  const auto base = fs::temp_directory_path() / "aigc_acceptance_determinism";
  fs::remove_all( base );
  uint32_t compared = 0, differing = 0, failed_runs = 0;
  const std::vector<std::string> flag_sets{ "--seed 7", "--seed 7 --thresholds 30,15,8",
                                            "--seed 3 --mode area --thresholds 20,8 --binary" };
  for ( std::size_t f = 0; f < flag_sets.size(); ++f )
  {
    const auto d1 = base / ( "a" + std::to_string( f ) );
    const auto d2 = base / ( "b" + std::to_string( f ) );
    fs::create_directories( d1 );
    fs::create_directories( d2 );
    for ( const auto& path : corpus_files() )
    {
      for ( const auto& d : { d1, d2 } )
      {
        const auto code = run_command( std::string( AIGC_CLI ) + " run " + path.string() + " " + flag_sets[f] +
                                       " -q -o " + d.string() );
        if ( code != 0 )
        {
          ++failed_runs;
          o.notes.push_back( "run failed (" + std::to_string( code ) + "): " + path.filename().string() );
        }
      }
      const auto stem = path.stem().string();
      const auto ext = flag_sets[f].find( "--binary" ) != std::string::npos ? ".choice.aig" : ".choice.aag";
      for ( const auto& file : { stem + ext, stem + ".report.txt" } )
      {
        ++compared;
        const auto a = slurp( d1 / file );
        const auto b = slurp( d2 / file );
        if ( a.empty() || a != b )
        {
          ++differing;
          o.notes.push_back( "differs: " + file + " [" + flag_sets[f] + "]" );
        }
      }
    }
  }
  fs::remove_all( base );
  o.pass = differing == 0 && failed_runs == 0;
  o.detail = std::to_string( compared ) + " file pairs over " + std::to_string( flag_sets.size() ) +
             " flag sets, " + std::to_string( differing ) + " differing, " + std::to_string( failed_runs ) +
             " failed runs";
  return o;
}

/* ---------------------------------------------------------------- 8 */

outcome criterion8()
{
  outcome o;
  const auto net = circuits::synthetic( criterion8_pis, criterion8_ands, 8 );
  const auto t0 = clock_type::now();
  const auto res = run_flow( net, flow_config{} );
  const double elapsed = seconds_since( t0 );
  const auto& t = res.timings;
  const double stage_sum = t.cone_selection + t.cc_generation + t.filtering + t.mapping;
  o.pass = elapsed < criterion8_time_limit_s && res.ok() && net.num_ands() == criterion8_ands;
  std::ostringstream d;
  d << std::fixed;
  d.precision( 2 );
  d << net.num_ands() << " ANDs, " << elapsed << " s wall, status " << ( res.ok() ? "ok" : "failed" ) << ", "
    << res.cones.size() << " cones, " << res.classes.total_choices << " choices, depth "
    << res.mapped_without.mapped_depth << " -> " << res.mapped_with.mapped_depth;
  o.detail = d.str();
  auto pct = [&]( double x ) {
    std::ostringstream s;
    s << std::fixed;
    s.precision( 1 );
    s << x << " ms (" << ( t.total > 0 ? 100.0 * x / t.total : 0.0 ) << "%)";
    return s.str();
  };
  o.notes.push_back( "cone selection: " + pct( t.cone_selection ) );
  o.notes.push_back( "CC generation:  " + pct( t.cc_generation ) );
  o.notes.push_back( "filtering:      " + pct( t.filtering ) );
  o.notes.push_back( "mapping:        " + pct( t.mapping ) );
  std::ostringstream s;
  s << std::fixed;
  s.precision( 1 );
  s << "total:          " << t.total << " ms (stage sum " << stage_sum << " ms)";
  o.notes.push_back( s.str() );
  return o;
}

template<typename Fn>
void guarded( int id, const std::string& title, Fn&& fn )
{
  outcome o;
  try
  {
    o = fn();
  }
  catch ( const std::exception& e )
  {
    o.pass = false;
    o.detail = std::string( "exception: " ) + e.what();
  }
  report( id, title, o );
}

} // namespace

int main()
{
  guarded( 1, "equivalence soundness of mapped netlists (exhaustive, <= 16 PIs)", criterion1 );
  guarded( 2, "variant soundness against the representative cone", criterion2 );
  guarded( 3, "choice roots fanout-free and quotient graph acyclic", criterion3 );
  guarded( 4, "choice monotonicity of mapped depth", criterion4 );
  guarded( 5, "metric axioms and Pearson reference case", criterion5 );
  guarded( 6, "MFFC brute-force verification", criterion6 );
  guarded( 7, "determinism of run outputs", criterion7 );
  guarded( 8, "desk-scale runtime on a 10k-AND circuit", criterion8 );
  return failures == 0 ? 0 : 1;
}
