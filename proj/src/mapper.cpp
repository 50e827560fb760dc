#include <aigc/mapper.hpp>

#include <aigc/kernels.hpp>

#include <algorithm>
#include <bit>
#include <limits>

namespace aigc
{

namespace
{

constexpr uint32_t inf_time = std::numeric_limits<uint32_t>::max() / 2;

struct member
{
  uint32_t node;
  bool phase;
};

cut_function mask_function( cut_function f, uint32_t num_vars )
{
  const auto bits = uint32_t{ 1 } << num_vars;
  for ( uint32_t w = 0; w < 4; ++w )
  {
    const uint32_t lo = w * 64;
    if ( lo >= bits )
      f[w] = 0;
    else if ( bits - lo < 64 )
      f[w] &= ( uint64_t{ 1 } << ( bits - lo ) ) - 1;
  }
  return f;
}

cut_function complement( cut_function f, uint32_t num_vars )
{
  for ( auto& w : f )
    w = ~w;
  return mask_function( f, num_vars );
}

/* re-expresses `f` over `from` leaves as a function over the superset `to` */
cut_function expand( const cut_function& f, std::span<const uint32_t> from, std::span<const uint32_t> to )
{
  std::array<uint32_t, 8> pos{};
  for ( uint32_t i = 0, j = 0; i < from.size(); ++i )
  {
    while ( to[j] != from[i] )
      ++j;
    pos[i] = j;
  }
  cut_function out{};
  const uint32_t bits = uint32_t{ 1 } << to.size();
  for ( uint32_t m = 0; m < bits; ++m )
  {
    uint32_t idx = 0;
    for ( uint32_t i = 0; i < from.size(); ++i )
      idx |= ( ( m >> pos[i] ) & 1u ) << i;
    if ( ( f[idx >> 6] >> ( idx & 63 ) ) & 1u )
      out[m >> 6] |= uint64_t{ 1 } << ( m & 63 );
  }
  return out;
}

bool merge_leaves( const cut& a, const cut& b, uint32_t k, cut& out )
{
  uint32_t i = 0, j = 0, n = 0;
  while ( i < a.size || j < b.size )
  {
    uint32_t next;
    if ( j == b.size || ( i < a.size && a.leaves[i] < b.leaves[j] ) )
      next = a.leaves[i++];
    else if ( i == a.size || b.leaves[j] < a.leaves[i] )
      next = b.leaves[j++];
    else
    {
      next = a.leaves[i++];
      ++j;
    }
    if ( n == k )
      return false;
    out.leaves[n++] = next;
  }
  out.size = static_cast<uint8_t>( n );
  return true;
}

bool is_subset( const cut& small, const cut& large )
{
  if ( small.size > large.size )
    return false;
  return std::includes( large.leaves.begin(), large.leaves.begin() + large.size, small.leaves.begin(),
                        small.leaves.begin() + small.size );
}

cut trivial_cut( uint32_t n )
{
  cut c;
  c.leaves[0] = n;
  c.size = 1;
  c.owner = n;
  c.member = n;
  c.function[0] = 0x2u;
  return c;
}

/* shared state of enumeration and covering */
class mapper_impl
{
public:
  mapper_impl( const choice_network& cn, const mapper_config& cfg ) : cn_( cn ), net_( cn.net ), cfg_( cfg )
  {
    if ( cfg.k < 2 || cfg.k > 8 )
      throw mapper_error( "cut size k must be in [2, 8], got " + std::to_string( cfg.k ) );
    if ( cfg.cut_limit == 0 )
      throw mapper_error( "cut limit must be positive" );
    order_ = quotient_topological_order( cn );
    if ( order_.empty() )
      throw mapper_error( "quotient graph of the choice network is cyclic" );

    const auto size = net_.size();
    phase_.assign( size, false );
    for ( const auto& cls : cn.classes )
      for ( const auto& c : cls.choices )
        phase_[c.node] = c.phase;

    const auto choice_logic = choice_logic_nodes( cn );
    fanout_.assign( size, 0u );
    for ( uint32_t n = 1; n < size; ++n )
    {
      if ( !net_.is_and( n ) || choice_logic[n] )
        continue;
      ++fanout_[quotient( net_.fanin0( n ).index() )];
      ++fanout_[quotient( net_.fanin1( n ).index() )];
    }
    for ( auto po : net_.pos() )
      ++fanout_[quotient( po.index() )];

    arrival_.assign( size, 0u );
    flow_.assign( size, 0.0 );
    required_.assign( size, inf_time );
    refs_.assign( size, 0u );
    selected_.assign( size, 0u );
  }

  uint32_t quotient( uint32_t n ) const { return cn_.quotient( n ); }
  bool is_gate( uint32_t n ) const { return net_.is_and( n ); }

  void enumerate( cut_ranking ranking )
  {
    ranking_ = ranking;
    cuts_.assign( net_.size(), {} );
    for ( auto q : order_ )
    {
      if ( !is_gate( q ) )
      {
        cuts_[q].push_back( trivial_cut( q ) );
        continue;
      }
      enumerate_node( q );
      update_estimates( q, 0u );
    }
  }

  std::vector<std::vector<cut>>& cuts() { return cuts_; }

  /* covering passes */
  void depth_pass()
  {
    for ( auto q : order_ )
    {
      if ( !is_gate( q ) )
        continue;
      const auto& cs = cuts_[q];
      uint32_t best = 0;
      for ( uint32_t i = 1; i + 1 < cs.size(); ++i )
      {
        const auto ai = cut_arrival( cs[i] ), ab = cut_arrival( cs[best] );
        if ( ai < ab || ( ai == ab && cut_flow( cs[i] ) < cut_flow( cs[best] ) ) )
          best = i;
      }
      update_estimates( q, best );
    }
  }

  void flow_pass()
  {
    for ( auto q : order_ )
    {
      if ( is_gate( q ) )
        update_estimates( q, choose_by_flow( q ) );
    }
  }

  void exact_pass()
  {
    compute_references();
    for ( auto q : order_ )
    {
      if ( !is_gate( q ) )
        continue;
      if ( refs_[q] == 0 )
      {
        update_estimates( q, choose_by_flow( q ) );
        continue;
      }
      deref_cut( cuts_[q][selected_[q]] );
      const auto& cs = cuts_[q];
      uint32_t best = std::numeric_limits<uint32_t>::max();
      uint32_t best_area = 0, best_arrival = 0;
      for ( uint32_t i = 0; i + 1 < cs.size(); ++i )
      {
        const auto arr = cut_arrival( cs[i] );
        if ( arr > required_[q] )
          continue;
        const auto area = ref_cut( cs[i] );
        deref_cut( cs[i] );
        if ( best == std::numeric_limits<uint32_t>::max() || area < best_area ||
             ( area == best_area && arr < best_arrival ) )
        {
          best = i;
          best_area = area;
          best_arrival = arr;
        }
      }
      if ( best == std::numeric_limits<uint32_t>::max() )
        best = fastest_cut( q );
      ref_cut( cs[best] );
      update_estimates( q, best );
    }
  }

  /* required times from the current cover; `target` for all PO drivers */
  void compute_required( uint32_t target )
  {
    compute_references();
    std::fill( required_.begin(), required_.end(), inf_time );
    for ( auto po : net_.pos() )
      required_[po.index()] = std::min( required_[po.index()], target );
    for ( auto it = order_.rbegin(); it != order_.rend(); ++it )
    {
      const auto q = *it;
      if ( !is_gate( q ) || refs_[q] == 0 || required_[q] == inf_time )
        continue;
      for ( auto l : cuts_[q][selected_[q]].leaf_span() )
        required_[l] = std::min( required_[l], required_[q] - 1 );
    }
  }

  void relax_required() { std::fill( required_.begin(), required_.end(), inf_time ); }

  uint32_t po_depth() const
  {
    uint32_t d = 0;
    for ( auto po : net_.pos() )
      d = std::max( d, arrival_[po.index()] );
    return d;
  }

  mapping_result result()
  {
    compute_references();
    mapping_result res;
    res.netlist.num_pis = net_.num_pis();
    std::vector<uint32_t> signal( net_.size(), 0u );
    for ( uint32_t i = 0; i < net_.num_pis(); ++i )
      signal[net_.pis()[i]] = i + 1;
    for ( auto q : order_ )
    {
      if ( !is_gate( q ) || refs_[q] == 0 )
        continue;
      const auto& c = cuts_[q][selected_[q]];
      res.selected.emplace( q, c );
      lut_netlist::lut l;
      for ( auto leaf : c.leaf_span() )
        l.fanins.push_back( signal[leaf] );
      const auto bits = uint64_t{ 1 } << c.size;
      l.function.assign( c.function.begin(), c.function.begin() + std::max<uint64_t>( 1, bits / 64 ) );
      l.origin = q;
      signal[q] = res.netlist.lut_signal( res.netlist.luts.size() );
      res.netlist.luts.push_back( std::move( l ) );
    }
    for ( auto po : net_.pos() )
      res.netlist.outputs.push_back( { signal[po.index()], po.complemented() } );
    res.lut_count = static_cast<uint32_t>( res.netlist.luts.size() );
    res.mapped_depth = po_depth();
    return res;
  }

private:
  void enumerate_node( uint32_t q )
  {
    struct candidate
    {
      cut c;
      uint32_t m;
      uint32_t i0, i1;
    };

    std::vector<member> members{ { q, false } };
    if ( auto it = cn_.class_of.find( q ); it != cn_.class_of.end() )
    {
      for ( const auto& ch : cn_.classes[it->second].choices )
        members.push_back( { ch.node, ch.phase } );
    }

    std::vector<candidate> cands;
    for ( uint32_t mi = 0; mi < members.size(); ++mi )
    {
      const auto m = members[mi].node;
      const auto q0 = quotient( net_.fanin0( m ).index() );
      const auto q1 = quotient( net_.fanin1( m ).index() );
      const auto& cs0 = cuts_[q0];
      const auto& cs1 = cuts_[q1];
      for ( uint32_t i0 = 0; i0 < cs0.size(); ++i0 )
      {
        for ( uint32_t i1 = 0; i1 < cs1.size(); ++i1 )
        {
          candidate cand{ {}, mi, i0, i1 };
          if ( !merge_leaves( cs0[i0], cs1[i1], cfg_.k, cand.c ) )
            continue;
          cand.c.owner = q;
          cand.c.member = m;
          cand.c.depth = cut_arrival( cand.c );
          cand.c.area_flow = cut_flow( cand.c );
          cands.push_back( cand );
        }
      }
    }

    std::stable_sort( cands.begin(), cands.end(), [&]( const candidate& a, const candidate& b ) {
      return better( a.c, b.c );
    } );

    auto& out = cuts_[q];
    out.clear();
    for ( const auto& cand : cands )
    {
      if ( out.size() == cfg_.cut_limit )
        break;
      bool dominated = false;
      for ( const auto& kept : out )
      {
        if ( is_subset( kept, cand.c ) )
        {
          dominated = true;
          break;
        }
      }
      if ( dominated )
        continue;

      cut c = cand.c;
      const auto& mem = members[cand.m];
      const auto f0 = net_.fanin0( mem.node );
      const auto f1 = net_.fanin1( mem.node );
      const auto& c0 = cuts_[quotient( f0.index() )][cand.i0];
      const auto& c1 = cuts_[quotient( f1.index() )][cand.i1];
      auto g0 = expand( c0.function, c0.leaf_span(), c.leaf_span() );
      auto g1 = expand( c1.function, c1.leaf_span(), c.leaf_span() );
      if ( f0.complemented() != phase_[f0.index()] )
        g0 = complement( g0, c.size );
      if ( f1.complemented() != phase_[f1.index()] )
        g1 = complement( g1, c.size );
      for ( uint32_t w = 0; w < 4; ++w )
        c.function[w] = g0[w] & g1[w];
      if ( mem.phase )
        c.function = complement( c.function, c.size );
      out.push_back( c );
    }
    out.push_back( trivial_cut( q ) );
  }

  bool better( const cut& a, const cut& b ) const
  {
    const auto ma = a.leaves[a.size - 1], mb = b.leaves[b.size - 1];
    if ( ranking_ == cut_ranking::depth )
    {
      if ( a.depth != b.depth )
        return a.depth < b.depth;
      if ( a.area_flow != b.area_flow )
        return a.area_flow < b.area_flow;
    }
    else
    {
      if ( a.area_flow != b.area_flow )
        return a.area_flow < b.area_flow;
      if ( a.depth != b.depth )
        return a.depth < b.depth;
    }
    return ma < mb;
  }

  uint32_t cut_arrival( const cut& c ) const
  {
    uint32_t d = 0;
    for ( auto l : c.leaf_span() )
      d = std::max( d, arrival_[l] );
    return d + 1;
  }

  double cut_flow( const cut& c ) const
  {
    double a = 1.0;
    for ( auto l : c.leaf_span() )
      a += flow_[l];
    return a;
  }

  void update_estimates( uint32_t q, uint32_t sel )
  {
    selected_[q] = sel;
    const auto& c = cuts_[q][sel];
    arrival_[q] = cut_arrival( c );
    flow_[q] = cut_flow( c ) / std::max( fanout_[q], 1u );
  }

  uint32_t fastest_cut( uint32_t q ) const
  {
    const auto& cs = cuts_[q];
    uint32_t best = 0;
    for ( uint32_t i = 1; i + 1 < cs.size(); ++i )
    {
      if ( cut_arrival( cs[i] ) < cut_arrival( cs[best] ) )
        best = i;
    }
    return best;
  }

  uint32_t choose_by_flow( uint32_t q ) const
  {
    const auto& cs = cuts_[q];
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for ( uint32_t i = 0; i + 1 < cs.size(); ++i )
    {
      const auto arr = cut_arrival( cs[i] );
      if ( arr > required_[q] )
        continue;
      if ( best == std::numeric_limits<uint32_t>::max() )
      {
        best = i;
        continue;
      }
      const auto fi = cut_flow( cs[i] ), fb = cut_flow( cs[best] );
      if ( fi < fb || ( fi == fb && arr < cut_arrival( cs[best] ) ) )
        best = i;
    }
    return best == std::numeric_limits<uint32_t>::max() ? fastest_cut( q ) : best;
  }

  void compute_references()
  {
    std::fill( refs_.begin(), refs_.end(), 0u );
    for ( auto po : net_.pos() )
      ++refs_[po.index()];
    for ( auto it = order_.rbegin(); it != order_.rend(); ++it )
    {
      const auto q = *it;
      if ( !is_gate( q ) || refs_[q] == 0 )
        continue;
      for ( auto l : cuts_[q][selected_[q]].leaf_span() )
        ++refs_[l];
    }
  }

  uint32_t ref_cut( const cut& c )
  {
    uint32_t area = 1;
    for ( auto l : c.leaf_span() )
    {
      if ( is_gate( l ) && refs_[l]++ == 0 )
        area += ref_cut( cuts_[l][selected_[l]] );
    }
    return area;
  }

  uint32_t deref_cut( const cut& c )
  {
    uint32_t area = 1;
    for ( auto l : c.leaf_span() )
    {
      if ( is_gate( l ) && --refs_[l] == 0 )
        area += deref_cut( cuts_[l][selected_[l]] );
    }
    return area;
  }

  const choice_network& cn_;
  const aig_network& net_;
  mapper_config cfg_;
  cut_ranking ranking_{ cut_ranking::depth };
  std::vector<uint32_t> order_;
  std::vector<bool> phase_;
  std::vector<uint32_t> fanout_;
  std::vector<std::vector<cut>> cuts_;
  std::vector<uint32_t> arrival_;
  std::vector<double> flow_;
  std::vector<uint32_t> required_;
  std::vector<uint32_t> refs_;
  std::vector<uint32_t> selected_;
};

} // namespace

std::string cut::function_string() const
{
  std::string s;
  for ( uint32_t i = uint32_t{ 1 } << size; i-- > 0; )
    s.push_back( ( ( function[i >> 6] >> ( i & 63 ) ) & 1u ) ? '1' : '0' );
  return s;
}

std::vector<std::vector<cut>> enumerate_cuts( const choice_network& cn, const mapper_config& cfg, cut_ranking ranking )
{
  mapper_impl impl( cn, cfg );
  impl.enumerate( ranking );
  return std::move( impl.cuts() );
}

mapping_result map_depth( const choice_network& cn, const mapper_config& cfg )
{
  mapper_impl impl( cn, cfg );
  impl.enumerate( cut_ranking::depth );
  impl.depth_pass();
  const auto target = impl.po_depth();
  impl.compute_required( target );
  impl.flow_pass();
  for ( uint32_t r = 0; r < cfg.rounds; ++r )
  {
    impl.compute_required( target );
    impl.exact_pass();
  }
  return impl.result();
}

mapping_result map_area( const choice_network& cn, const mapper_config& cfg )
{
  mapper_impl impl( cn, cfg );
  impl.enumerate( cut_ranking::area );
  impl.relax_required();
  impl.flow_pass();
  for ( uint32_t r = 0; r < cfg.rounds; ++r )
    impl.exact_pass();
  return impl.result();
}

uint32_t lut_netlist::depth() const
{
  std::vector<uint32_t> level( 1 + num_pis + luts.size(), 0u );
  for ( std::size_t i = 0; i < luts.size(); ++i )
  {
    uint32_t d = 0;
    for ( auto f : luts[i].fanins )
      d = std::max( d, level[f] );
    level[lut_signal( i )] = d + 1;
  }
  uint32_t d = 0;
  for ( const auto& o : outputs )
    d = std::max( d, level[o.signal] );
  return d;
}

std::vector<std::vector<uint64_t>> simulate_netlist( const lut_netlist& nl, const pattern_set& patterns )
{
  if ( patterns.num_pis() != nl.num_pis )
    throw simulation_error( "pattern set has " + std::to_string( patterns.num_pis() ) + " inputs, netlist has " +
                            std::to_string( nl.num_pis ) );
  const auto n_words = patterns.n_words();
  const auto num_signals = 1 + nl.num_pis + nl.luts.size();
  std::vector<uint64_t> values( num_signals * n_words, 0u );
  auto signal = [&]( uint32_t s ) { return std::span<uint64_t>( values.data() + s * n_words, n_words ); };
  for ( uint32_t i = 0; i < nl.num_pis; ++i )
    std::copy( patterns[i].begin(), patterns[i].end(), signal( i + 1 ).begin() );

  std::vector<uint64_t> scratch;
  for ( std::size_t li = 0; li < nl.luts.size(); ++li )
  {
    const auto& l = nl.luts[li];
    const auto n = static_cast<uint32_t>( l.fanins.size() );
    const auto rows = std::size_t{ 1 } << n;
    scratch.assign( rows * n_words, 0u );
    for ( std::size_t m = 0; m < rows; ++m )
    {
      if ( ( l.function[m >> 6] >> ( m & 63 ) ) & 1u )
        std::fill_n( scratch.begin() + m * n_words, n_words, ~uint64_t{ 0 } );
    }
    /* Shannon reduction, lowest variable first */
    for ( uint32_t v = 0; v < n; ++v )
    {
      const auto sel = signal( l.fanins[v] );
      const auto half = rows >> ( v + 1 );
      for ( std::size_t j = 0; j < half; ++j )
      {
        std::span<uint64_t> dst( scratch.data() + j * n_words, n_words );
        std::span<const uint64_t> lo( scratch.data() + 2 * j * n_words, n_words );
        std::span<const uint64_t> hi( scratch.data() + ( 2 * j + 1 ) * n_words, n_words );
        kernels::mux_words( dst, sel, hi, lo );
      }
    }
    std::copy_n( scratch.begin(), n_words, signal( nl.lut_signal( li ) ).begin() );
  }

  std::vector<std::vector<uint64_t>> out;
  out.reserve( nl.outputs.size() );
  for ( const auto& o : nl.outputs )
  {
    auto s = signal( o.signal );
    std::vector<uint64_t> v( s.begin(), s.end() );
    if ( o.complemented )
    {
      for ( auto& w : v )
        w = ~w;
    }
    out.push_back( std::move( v ) );
  }
  return out;
}

cec_result verify_mapping( const aig_network& subject, const mapping_result& result, uint64_t seed )
{
  const auto& nl = result.netlist;
  if ( nl.num_pis != subject.num_pis() )
    throw verify_error( "PI count mismatch: " + std::to_string( subject.num_pis() ) + " vs " +
                        std::to_string( nl.num_pis ) );
  if ( nl.outputs.size() != subject.num_pos() )
    throw verify_error( "PO count mismatch: " + std::to_string( subject.num_pos() ) + " vs " +
                        std::to_string( nl.outputs.size() ) );
  const output_simulator lhs = aig_simulator( subject );
  const output_simulator rhs = [&nl]( const pattern_set& p ) { return simulate_netlist( nl, p ); };
  if ( subject.num_pis() <= 16 )
    return check_exhaustive( lhs, rhs, subject.num_pis() );
  return check_random( lhs, rhs, subject.num_pis(), 1024, seed );
}

std::string write_blif( const lut_netlist& nl, const std::string& model )
{
  std::string out;
  auto name = [&]( uint32_t s ) -> std::string {
    if ( s == 0 )
      return "const0";
    if ( s <= nl.num_pis )
      return "pi" + std::to_string( s - 1 );
    return "n" + std::to_string( nl.luts[s - 1 - nl.num_pis].origin );
  };

  out += ".model " + model + "\n.inputs";
  for ( uint32_t i = 0; i < nl.num_pis; ++i )
    out += " pi" + std::to_string( i );
  out += "\n.outputs";
  for ( std::size_t i = 0; i < nl.outputs.size(); ++i )
    out += " po" + std::to_string( i );
  out += "\n";

  bool uses_const = false;
  for ( const auto& l : nl.luts )
    uses_const |= std::find( l.fanins.begin(), l.fanins.end(), 0u ) != l.fanins.end();
  for ( const auto& o : nl.outputs )
    uses_const |= o.signal == 0;
  if ( uses_const )
    out += ".names const0\n";

  for ( const auto& l : nl.luts )
  {
    out += ".names";
    for ( auto f : l.fanins )
      out += " " + name( f );
    out += " n" + std::to_string( l.origin ) + "\n";
    const auto rows = std::size_t{ 1 } << l.fanins.size();
    for ( std::size_t m = 0; m < rows; ++m )
    {
      if ( !( ( l.function[m >> 6] >> ( m & 63 ) ) & 1u ) )
        continue;
      for ( std::size_t v = 0; v < l.fanins.size(); ++v )
        out.push_back( ( ( m >> v ) & 1u ) ? '1' : '0' );
      out += " 1\n";
    }
  }
  for ( std::size_t i = 0; i < nl.outputs.size(); ++i )
  {
    const auto& o = nl.outputs[i];
    out += ".names " + name( o.signal ) + " po" + std::to_string( i ) + "\n";
    out += o.complemented ? "0 1\n" : "1 1\n";
  }
  out += ".end\n";
  return out;
}

} // namespace aigc
