#include <aigc/choice.hpp>

#include <aigc/aiger.hpp>
#include <aigc/kernels.hpp>
#include <aigc/simulate.hpp>
#include <aigc/stats.hpp>

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace aigc
{

uint32_t choice_network::quotient( uint32_t n ) const
{
  auto it = class_of.find( n );
  return it == class_of.end() ? n : classes[it->second].representative;
}

uint32_t choice_network::num_choices() const
{
  uint32_t total = 0;
  for ( const auto& c : classes )
    total += static_cast<uint32_t>( c.choices.size() );
  return total;
}

choice_network make_choice_network( aig_network net )
{
  choice_network cn;
  cn.net = std::move( net );
  return cn;
}

namespace
{

void rebuild_class_index( choice_network& cn )
{
  cn.class_of.clear();
  for ( uint32_t i = 0; i < cn.classes.size(); ++i )
  {
    cn.class_of[cn.classes[i].representative] = i;
    for ( const auto& c : cn.classes[i].choices )
      cn.class_of[c.node] = i;
  }
}

/* keeps nodes feeding the POs or a surviving choice root; indices are renumbered in order */
choice_network compact( const choice_network& cn )
{
  const auto& net = cn.net;
  std::vector<bool> live( net.size(), false );
  for ( auto po : net.pos() )
    live[po.index()] = true;
  for ( const auto& cls : cn.classes )
  {
    live[cls.representative] = true;
    for ( const auto& c : cls.choices )
      live[c.node] = true;
  }
  for ( uint32_t n = net.size(); n-- > 1; )
  {
    if ( live[n] && net.is_and( n ) )
    {
      live[net.fanin0( n ).index()] = true;
      live[net.fanin1( n ).index()] = true;
    }
  }

  choice_network out;
  std::vector<node_ref> map( net.size(), const0 );
  for ( auto pi : net.pis() )
    map[pi] = out.net.create_pi();
  for ( uint32_t n = 1; n < net.size(); ++n )
  {
    if ( !live[n] || !net.is_and( n ) )
      continue;
    const auto f0 = net.fanin0( n );
    const auto f1 = net.fanin1( n );
    map[n] = out.net.create_and_raw( map[f0.index()] ^ f0.complemented(), map[f1.index()] ^ f1.complemented() );
  }
  for ( auto po : net.pos() )
    out.net.create_po( map[po.index()] ^ po.complemented() );
  for ( const auto& cls : cn.classes )
  {
    equivalence_class c{ map[cls.representative].index(), {} };
    for ( const auto& ch : cls.choices )
      c.choices.push_back( { map[ch.node].index(), ch.phase } );
    out.classes.push_back( std::move( c ) );
  }
  rebuild_class_index( out );
  return out;
}

} // namespace

choice_network build_choice_network( const aig_network& subject, const std::vector<cone_selection>& selections )
{
  choice_network cn;
  cn.net = subject;

  std::unordered_set<uint32_t> roots;
  for ( const auto& sel : selections )
  {
    if ( sel.rc.root >= subject.size() || !subject.is_and( sel.rc.root ) )
      throw choice_error( "representative " + std::to_string( sel.rc.root ) + " is not an AND node of the subject" );
    roots.insert( sel.rc.root );
  }

  for ( const auto& sel : selections )
  {
    for ( auto s : sel.rc.support )
    {
      if ( s >= subject.size() )
        throw choice_error( "support node " + std::to_string( s ) + " does not exist in the subject" );
    }
    if ( cn.class_of.contains( sel.rc.root ) )
      continue;

    equivalence_class cls{ sel.rc.root, {} };
    std::unordered_set<uint32_t> members;
    for ( const auto& v : sel.variants )
    {
      const auto& cnet = v.cone_net;
      if ( cnet.num_pis() != sel.rc.support.size() )
        throw choice_error( "variant has " + std::to_string( cnet.num_pis() ) + " inputs, cone support has " +
                            std::to_string( sel.rc.support.size() ) );
      if ( cnet.num_pos() != 1 )
        throw choice_error( "variant must have exactly one output" );

      std::vector<node_ref> map( cnet.size(), const0 );
      for ( uint32_t i = 0; i < cnet.num_pis(); ++i )
        map[cnet.pis()[i]] = node_ref{ sel.rc.support[i], false };
      cnet.foreach_and( [&]( uint32_t n ) {
        const auto f0 = cnet.fanin0( n );
        const auto f1 = cnet.fanin1( n );
        map[n] = cn.net.create_and( map[f0.index()] ^ f0.complemented(), map[f1.index()] ^ f1.complemented() );
      } );
      const auto po = cnet.po_at( 0 );
      const auto r = map[po.index()] ^ po.complemented();

      if ( r.index() == cls.representative || !cn.net.is_and( r.index() ) || roots.contains( r.index() ) ||
           cn.class_of.contains( r.index() ) || members.contains( r.index() ) )
        continue;
      members.insert( r.index() );
      cls.choices.push_back( { r.index(), r.complemented() } );
    }
    if ( cls.choices.empty() )
      continue;
    const auto id = static_cast<uint32_t>( cn.classes.size() );
    cn.class_of[cls.representative] = id;
    for ( const auto& c : cls.choices )
      cn.class_of[c.node] = id;
    cn.classes.push_back( std::move( cls ) );
  }
  return cn;
}

choice_network remove_bad_choices( const choice_network& cn )
{
  const auto& net = cn.net;
  const auto fanout = compute_fanout( net );

  /* admitted membership, grown one choice at a time so the quotient stays acyclic */
  std::unordered_map<uint32_t, uint32_t> member_class;
  std::vector<equivalence_class> admitted;
  for ( const auto& cls : cn.classes )
  {
    member_class[cls.representative] = static_cast<uint32_t>( admitted.size() );
    admitted.push_back( { cls.representative, {} } );
  }

  std::vector<uint32_t> stamp( net.size(), 0u );
  uint32_t generation = 0;

  auto reaches_class = [&]( uint32_t choice_root, uint32_t target_rep ) {
    ++generation;
    std::vector<uint32_t> stack{ net.fanin0( choice_root ).index(), net.fanin1( choice_root ).index() };
    while ( !stack.empty() )
    {
      const auto v = stack.back();
      stack.pop_back();
      auto it = member_class.find( v );
      const auto q = it == member_class.end() ? v : admitted[it->second].representative;
      if ( q == target_rep )
        return true;
      if ( stamp[q] == generation )
        continue;
      stamp[q] = generation;
      auto expand = [&]( uint32_t m ) {
        if ( net.is_and( m ) )
        {
          stack.push_back( net.fanin0( m ).index() );
          stack.push_back( net.fanin1( m ).index() );
        }
      };
      if ( it == member_class.end() )
      {
        expand( v );
        continue;
      }
      const auto& cls = admitted[it->second];
      expand( cls.representative );
      for ( const auto& c : cls.choices )
        expand( c.node );
    }
    return false;
  };

  for ( uint32_t i = 0; i < cn.classes.size(); ++i )
  {
    const auto& cls = cn.classes[i];
    for ( const auto& c : cls.choices )
    {
      if ( fanout[c.node] > 0 || !net.is_and( c.node ) )
        continue;
      if ( reaches_class( c.node, cls.representative ) )
        continue;
      admitted[i].choices.push_back( c );
      member_class[c.node] = i;
    }
  }

  choice_network filtered;
  filtered.net = net;
  for ( auto& cls : admitted )
  {
    if ( !cls.choices.empty() )
      filtered.classes.push_back( std::move( cls ) );
  }
  return compact( filtered );
}

std::vector<uint32_t> quotient_topological_order( const choice_network& cn )
{
  const auto& net = cn.net;
  std::vector<uint32_t> indegree( net.size(), 0u );
  std::vector<std::vector<uint32_t>> succ( net.size() );
  bool self_loop = false;
  for ( uint32_t m = 1; m < net.size(); ++m )
  {
    if ( !net.is_and( m ) )
      continue;
    const auto qm = cn.quotient( m );
    for ( auto f : { net.fanin0( m ).index(), net.fanin1( m ).index() } )
    {
      const auto qf = cn.quotient( f );
      if ( qf == qm )
      {
        self_loop = true;
        continue;
      }
      succ[qf].push_back( qm );
      ++indegree[qm];
    }
  }
  if ( self_loop )
    return {};

  std::vector<uint32_t> order;
  std::deque<uint32_t> ready;
  uint32_t expected = 0;
  for ( uint32_t n = 0; n < net.size(); ++n )
  {
    if ( cn.quotient( n ) != n )
      continue;
    ++expected;
    if ( indegree[n] == 0 )
      ready.push_back( n );
  }
  while ( !ready.empty() )
  {
    const auto n = ready.front();
    ready.pop_front();
    order.push_back( n );
    for ( auto s : succ[n] )
    {
      if ( --indegree[s] == 0 )
        ready.push_back( s );
    }
  }
  if ( order.size() != expected )
    return {};
  return order;
}

validation_report validate_choice_network( const choice_network& cn, std::size_t n_words, uint64_t seed )
{
  validation_report rep;
  rep.classes = static_cast<uint32_t>( cn.classes.size() );
  rep.choices = cn.num_choices();

  const auto fanout = compute_fanout( cn.net );
  for ( const auto& cls : cn.classes )
  {
    for ( const auto& c : cls.choices )
    {
      if ( fanout[c.node] != 0 )
      {
        ++rep.fanout_violations;
        rep.messages.push_back( "choice " + std::to_string( c.node ) + " of class " +
                                std::to_string( cls.representative ) + " has fanout " +
                                std::to_string( fanout[c.node] ) );
      }
    }
  }

  if ( quotient_topological_order( cn ).empty() && cn.net.size() > 0 )
  {
    rep.quotient_acyclic = false;
    rep.messages.push_back( "quotient graph contains a cycle" );
  }

  const auto sim = simulate( cn.net, random_patterns( cn.net.num_pis(), n_words, seed ) );
  for ( const auto& cls : cn.classes )
  {
    for ( const auto& c : cls.choices )
    {
      if ( kernels::first_difference( sim[cls.representative], sim[c.node], c.phase ) != n_words )
      {
        ++rep.functional_violations;
        rep.messages.push_back( "choice " + std::to_string( c.node ) + " disagrees with representative " +
                                std::to_string( cls.representative ) );
      }
    }
  }
  return rep;
}

class_summary class_stats( const choice_network& cn )
{
  class_summary s;
  s.classes = static_cast<uint32_t>( cn.classes.size() );
  for ( const auto& cls : cn.classes )
  {
    const auto k = static_cast<uint32_t>( cls.choices.size() );
    s.total_choices += k;
    ++s.histogram[k];
  }
  return s;
}

std::vector<bool> choice_logic_nodes( const choice_network& cn )
{
  const auto& net = cn.net;
  std::vector<bool> from_pos( net.size(), false );
  for ( auto po : net.pos() )
    from_pos[po.index()] = true;
  for ( uint32_t n = net.size(); n-- > 1; )
  {
    if ( from_pos[n] && net.is_and( n ) )
    {
      from_pos[net.fanin0( n ).index()] = true;
      from_pos[net.fanin1( n ).index()] = true;
    }
  }
  std::vector<bool> choice_logic( net.size(), false );
  for ( uint32_t n = 1; n < net.size(); ++n )
    choice_logic[n] = net.is_and( n ) && !from_pos[n];
  return choice_logic;
}

choice_network strip_choices( const choice_network& cn )
{
  choice_network plain;
  plain.net = cn.net;
  return compact( plain );
}

std::string write_choice_network( const choice_network& cn, bool binary )
{
  auto net = cn.net;
  const auto var = aiger_variable_map( net );
  aiger_write_options opts;
  opts.binary = binary;
  uint32_t extra = 0;
  for ( const auto& cls : cn.classes )
  {
    std::ostringstream line;
    line << "c CHOICE " << 2 * var[cls.representative];
    for ( const auto& c : cls.choices )
    {
      net.create_po( node_ref{ c.node, false } );
      ++extra;
      line << ' ' << 2 * var[c.node] + ( c.phase ? 1u : 0u );
    }
    opts.comments.push_back( line.str() );
  }
  opts.comments.insert( opts.comments.begin(), "c CHOICE-OUTPUTS " + std::to_string( extra ) );
  return write_aiger( net, opts );
}

choice_network read_choice_network( std::string_view bytes )
{
  std::vector<std::string> comments;
  std::vector<node_ref> var_map;
  auto net = read_aiger( bytes, &comments, &var_map );

  choice_network cn;
  uint32_t extra = 0;
  bool have_extra = false;
  for ( auto line : comments )
  {
    if ( line.starts_with( "c " ) )
      line.erase( 0, 2 );
    std::istringstream is( line );
    std::string tag;
    is >> tag;
    if ( tag == "CHOICE-OUTPUTS" )
    {
      if ( !( is >> extra ) )
        throw aiger_error( "malformed CHOICE-OUTPUTS record" );
      have_extra = true;
    }
    else if ( tag == "CHOICE" )
    {
      auto resolve = [&]( uint32_t lit ) {
        if ( ( lit >> 1 ) >= var_map.size() )
          throw aiger_error( "CHOICE literal " + std::to_string( lit ) + " out of range" );
        return var_map[lit >> 1] ^ ( ( lit & 1u ) != 0 );
      };
      uint32_t lit = 0;
      if ( !( is >> lit ) )
        throw aiger_error( "malformed CHOICE record" );
      const auto rep = resolve( lit );
      equivalence_class cls{ rep.index(), {} };
      while ( is >> lit )
      {
        const auto r = resolve( lit );
        cls.choices.push_back( { r.index(), r.complemented() != rep.complemented() } );
      }
      cn.classes.push_back( std::move( cls ) );
    }
  }
  if ( !have_extra )
    throw aiger_error( "missing CHOICE-OUTPUTS record" );
  if ( extra > net.num_pos() )
    throw aiger_error( "CHOICE-OUTPUTS exceeds output count" );
  net.truncate_pos( net.num_pos() - extra );
  cn.net = std::move( net );
  rebuild_class_index( cn );
  return cn;
}

} // namespace aigc
