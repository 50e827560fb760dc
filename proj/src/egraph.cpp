#include <aigc/egraph.hpp>

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace aigc
{

/******************************************************************************
 * rules                                                                      *
 ******************************************************************************/

rewrite_rule make_rule( std::string name, std::string_view lhs, std::string_view rhs )
{
  std::vector<std::string> names;
  rewrite_rule r{ std::move( name ), parse_term( lhs, names ), {} };
  const auto lhs_vars = names.size();
  r.rhs = parse_term( rhs, names );
  if ( names.size() != lhs_vars )
    throw rule_error( "rule '" + r.name + "': right side uses unbound variable '" + names.back() + "'" );
  if ( lhs_vars > 8 )
    throw rule_error( "rule '" + r.name + "': too many pattern variables" );
  if ( r.lhs.node( r.lhs.root ).op == term_op::var )
    throw rule_error( "rule '" + r.name + "': left side must not be a bare variable" );

  for ( uint64_t assignment = 0; assignment < ( uint64_t{ 1 } << lhs_vars ); ++assignment )
  {
    if ( r.lhs.evaluate( r.lhs.root, assignment ) != r.rhs.evaluate( r.rhs.root, assignment ) )
      throw rule_error( "rule '" + r.name + "' is unsound at assignment " + std::to_string( assignment ) );
  }
  return r;
}

std::vector<rewrite_rule> default_rules()
{
  std::vector<rewrite_rule> rules;
  rules.push_back( make_rule( "and-comm", "(and a b)", "(and b a)" ) );
  rules.push_back( make_rule( "and-assoc-l", "(and a (and b c))", "(and (and a b) c)" ) );
  rules.push_back( make_rule( "and-assoc-r", "(and (and a b) c)", "(and a (and b c))" ) );
  rules.push_back( make_rule( "double-neg", "(not (not a))", "a" ) );
  rules.push_back( make_rule( "and-idem", "(and a a)", "a" ) );
  rules.push_back( make_rule( "and-annihilate", "(and a (not a))", "false" ) );
  rules.push_back( make_rule( "demorgan-or", "(not (and (not a) (not b)))", "(or a b)" ) );
  rules.push_back( make_rule( "demorgan-and", "(or a b)", "(not (and (not a) (not b)))" ) );
  return rules;
}

/******************************************************************************
 * egraph                                                                     *
 ******************************************************************************/

class_id egraph::find( class_id c ) const
{
  while ( parent_[c] != c )
  {
    parent_[c] = parent_[parent_[c]];
    c = parent_[c];
  }
  return c;
}

term_node egraph::canonicalize( term_node n ) const
{
  switch ( n.op )
  {
  case term_op::not_op:
    n.a = find( n.a );
    break;
  case term_op::and_op:
  case term_op::or_op:
    n.a = find( n.a );
    n.b = find( n.b );
    break;
  default:
    break;
  }
  return n;
}

class_id egraph::add( term_node n )
{
  n = canonicalize( n );
  if ( auto it = memo_.find( n ); it != memo_.end() )
    return find( it->second );
  const auto id = static_cast<class_id>( classes_.size() );
  parent_.push_back( id );
  classes_.push_back( { { n } } );
  memo_.emplace( n, id );
  if ( n.op == term_op::var )
    num_vars_ = std::max( num_vars_, n.a + 1 );
  return id;
}

class_id egraph::add_term( const term_dag& t )
{
  std::vector<class_id> ids( t.size() );
  for ( uint32_t i = 0; i < t.size(); ++i )
  {
    auto n = t.node( i );
    if ( n.op != term_op::var && n.op != term_op::constant )
    {
      n.a = ids[n.a];
      if ( n.op != term_op::not_op )
        n.b = ids[n.b];
    }
    ids[i] = add( n );
  }
  return find( ids[t.root] );
}

bool egraph::merge( class_id a, class_id b )
{
  a = find( a );
  b = find( b );
  if ( a == b )
    return false;
  if ( b < a )
    std::swap( a, b );
  auto& from = classes_[b].nodes;
  auto& into = classes_[a].nodes;
  into.insert( into.end(), from.begin(), from.end() );
  from.clear();
  from.shrink_to_fit();
  parent_[b] = a;
  dirty_ = true;
  return true;
}

void egraph::rebuild()
{
  if ( !dirty_ )
    return;
  while ( true )
  {
    std::unordered_map<term_node, class_id, term_node_hash> memo;
    memo.reserve( memo_.size() );
    std::vector<std::pair<class_id, class_id>> pending;
    for ( class_id c = 0; c < classes_.size(); ++c )
    {
      if ( find( c ) != c )
        continue;
      auto& nodes = classes_[c].nodes;
      for ( auto& n : nodes )
      {
        n = canonicalize( n );
        auto [it, inserted] = memo.try_emplace( n, c );
        if ( !inserted && find( it->second ) != c )
          pending.emplace_back( it->second, c );
      }
      std::sort( nodes.begin(), nodes.end(), []( const term_node& x, const term_node& y ) {
        return std::tie( x.op, x.a, x.b ) < std::tie( y.op, y.a, y.b );
      } );
      nodes.erase( std::unique( nodes.begin(), nodes.end() ), nodes.end() );
    }
    memo_ = std::move( memo );
    bool changed = false;
    for ( auto [x, y] : pending )
      changed |= merge( x, y );
    if ( !changed )
      break;
  }
  dirty_ = false;
}

std::size_t egraph::num_classes() const
{
  std::size_t n = 0;
  for ( class_id c = 0; c < classes_.size(); ++c )
    n += find( c ) == c;
  return n;
}

std::vector<class_id> egraph::class_ids() const
{
  std::vector<class_id> ids;
  for ( class_id c = 0; c < classes_.size(); ++c )
  {
    if ( find( c ) == c )
      ids.push_back( c );
  }
  return ids;
}

/******************************************************************************
 * saturation                                                                 *
 ******************************************************************************/

std::string_view stop_reason_name( stop_reason r )
{
  switch ( r )
  {
  case stop_reason::saturated:
    return "saturated";
  case stop_reason::iteration_limit:
    return "iteration-limit";
  case stop_reason::node_limit:
    return "node-limit";
  case stop_reason::time_limit:
    return "time-limit";
  }
  return "unknown";
}

namespace
{

struct substitution
{
  std::array<class_id, 8> binding{};
  uint8_t bound{ 0 };
};

class matcher
{
public:
  matcher( const egraph& g, std::size_t cap ) : g_( g ), cap_( cap ) {}

  void match( const term_dag& p, uint32_t pid, class_id c, const substitution& s, std::vector<substitution>& out )
  {
    if ( out.size() >= cap_ )
      return;
    const auto& pn = p.node( pid );
    switch ( pn.op )
    {
    case term_op::var:
    {
      const auto bit = static_cast<uint8_t>( 1u << pn.a );
      if ( s.bound & bit )
      {
        if ( g_.find( s.binding[pn.a] ) == g_.find( c ) )
          out.push_back( s );
      }
      else
      {
        auto t = s;
        t.binding[pn.a] = c;
        t.bound |= bit;
        out.push_back( t );
      }
      return;
    }
    case term_op::constant:
      for ( const auto& n : g_.nodes( c ) )
      {
        if ( n.op == term_op::constant )
        {
          out.push_back( s );
          return;
        }
      }
      return;
    case term_op::not_op:
      for ( const auto& n : g_.nodes( c ) )
      {
        if ( n.op == term_op::not_op )
          match( p, pn.a, n.a, s, out );
      }
      return;
    case term_op::and_op:
    case term_op::or_op:
      for ( const auto& n : g_.nodes( c ) )
      {
        if ( n.op != pn.op )
          continue;
        std::vector<substitution> partial;
        match( p, pn.a, n.a, s, partial );
        for ( const auto& t : partial )
          match( p, pn.b, n.b, t, out );
      }
      return;
    }
  }

  bool exhausted( std::size_t produced ) const { return produced >= cap_; }

private:
  const egraph& g_;
  std::size_t cap_;
};

class_id instantiate( egraph& g, const term_dag& p, const substitution& s )
{
  std::vector<class_id> ids( p.size() );
  for ( uint32_t i = 0; i <= p.root; ++i )
  {
    const auto& pn = p.node( i );
    switch ( pn.op )
    {
    case term_op::var:
      ids[i] = s.binding[pn.a];
      break;
    case term_op::constant:
      ids[i] = g.add( pn );
      break;
    case term_op::not_op:
      ids[i] = g.add( { term_op::not_op, ids[pn.a], 0 } );
      break;
    case term_op::and_op:
    case term_op::or_op:
      ids[i] = g.add( { pn.op, ids[pn.a], ids[pn.b] } );
      break;
    }
  }
  return ids[p.root];
}

} // namespace

saturation_result saturate( const term_dag& seed, const std::vector<rewrite_rule>& rules,
                            const saturation_limits& limits )
{
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  saturation_result res;
  auto& g = res.graph;
  res.root = g.add_term( seed );

  auto out_of_time = [&] { return clock::now() - start >= limits.time_budget; };

  res.reason = stop_reason::iteration_limit;
  for ( uint32_t iter = 0; iter < limits.max_iterations; ++iter )
  {
    if ( out_of_time() )
    {
      res.reason = stop_reason::time_limit;
      break;
    }
    const auto before_nodes = g.num_enodes();
    const auto before_classes = g.num_classes();

    /* collect all matches on the current graph, then apply */
    const std::size_t cap = limits.max_enodes * 4;
    std::vector<std::pair<std::size_t, std::pair<class_id, substitution>>> matches;
    matcher m( g, cap );
    bool truncated = false;
    for ( std::size_t r = 0; r < rules.size() && !truncated; ++r )
    {
      for ( auto c : g.class_ids() )
      {
        std::vector<substitution> subs;
        m.match( rules[r].lhs, rules[r].lhs.root, c, {}, subs );
        for ( const auto& s : subs )
          matches.push_back( { r, { c, s } } );
        if ( matches.size() >= cap )
        {
          truncated = true;
          break;
        }
      }
    }

    bool hit_node_limit = false;
    for ( const auto& [r, cs] : matches )
    {
      const auto rhs_class = instantiate( g, rules[r].rhs, cs.second );
      g.merge( cs.first, rhs_class );
      if ( g.num_enodes() >= limits.max_enodes )
      {
        hit_node_limit = true;
        break;
      }
    }
    g.rebuild();
    res.iterations = iter + 1;
    res.root = g.find( res.root );

    if ( hit_node_limit || truncated )
    {
      res.reason = stop_reason::node_limit;
      break;
    }
    if ( g.num_enodes() == before_nodes && g.num_classes() == before_classes )
    {
      res.reason = stop_reason::saturated;
      break;
    }
  }
  res.root = g.find( res.root );
  return res;
}

/******************************************************************************
 * extraction                                                                 *
 ******************************************************************************/

namespace
{

constexpr uint64_t cost_cap = std::numeric_limits<uint64_t>::max() / 4;
constexpr tree_cost infinite_cost{ std::numeric_limits<uint64_t>::max(), std::numeric_limits<uint64_t>::max(),
                                   std::numeric_limits<uint64_t>::max() };

uint64_t sat_add( uint64_t a, uint64_t b ) { return std::min( cost_cap, a + b ); }

bool is_infinite( const tree_cost& c ) { return c.nodes == infinite_cost.nodes; }

bool less( const tree_cost& x, const tree_cost& y, opt_mode mode )
{
  if ( mode == opt_mode::delay )
    return std::tie( x.depth, x.size, x.nodes ) < std::tie( y.depth, y.size, y.nodes );
  return std::tie( x.size, x.depth, x.nodes ) < std::tie( y.size, y.depth, y.nodes );
}

bool same( const tree_cost& x, const tree_cost& y )
{
  return x.depth == y.depth && x.size == y.size && x.nodes == y.nodes;
}

tree_cost node_cost( const egraph& g, const term_node& n, const std::vector<tree_cost>& costs )
{
  switch ( n.op )
  {
  case term_op::var:
  case term_op::constant:
    return { 0, 0, 1 };
  case term_op::not_op:
  {
    const auto& c = costs[g.find( n.a )];
    if ( is_infinite( c ) )
      return infinite_cost;
    return { c.depth, c.size, sat_add( c.nodes, 1 ) };
  }
  case term_op::and_op:
  case term_op::or_op:
  {
    const auto& x = costs[g.find( n.a )];
    const auto& y = costs[g.find( n.b )];
    if ( is_infinite( x ) || is_infinite( y ) )
      return infinite_cost;
    return { 1 + std::max( x.depth, y.depth ), sat_add( 1, sat_add( x.size, y.size ) ),
             sat_add( 1, sat_add( x.nodes, y.nodes ) ) };
  }
  }
  return infinite_cost;
}

std::vector<tree_cost> compute_costs( const egraph& g, opt_mode mode )
{
  const auto ids = g.class_ids();
  const auto max_id = ids.empty() ? 0u : ids.back() + 1u;
  std::vector<tree_cost> costs( max_id, infinite_cost );
  bool changed = true;
  while ( changed )
  {
    changed = false;
    for ( auto c : ids )
    {
      for ( const auto& n : g.nodes( c ) )
      {
        const auto nc = node_cost( g, n, costs );
        if ( !is_infinite( nc ) && less( nc, costs[c], mode ) )
        {
          costs[c] = nc;
          changed = true;
        }
      }
    }
  }
  return costs;
}

} // namespace

std::unordered_map<class_id, tree_cost> class_costs( const egraph& g, opt_mode mode )
{
  const auto costs = compute_costs( g, mode );
  std::unordered_map<class_id, tree_cost> out;
  for ( auto c : g.class_ids() )
    out.emplace( c, costs[c] );
  return out;
}

std::vector<aig_network> extract_variants( const egraph& g, class_id root, uint32_t num_pis, opt_mode mode,
                                           uint32_t count, uint64_t seed )
{
  if ( g.num_classes() == 0 )
    throw std::invalid_argument( "cannot extract from an empty e-graph" );
  root = g.find( root );
  const auto costs = compute_costs( g, mode );
  if ( is_infinite( costs[root] ) )
    throw std::invalid_argument( "root class has no finite extraction" );

  /* prune: keep only e-nodes whose cost equals their class minimum */
  std::unordered_map<class_id, std::vector<term_node>> kept;
  auto kept_nodes = [&]( class_id c ) -> const std::vector<term_node>& {
    auto it = kept.find( c );
    if ( it != kept.end() )
      return it->second;
    std::vector<term_node> v;
    for ( const auto& n : g.nodes( c ) )
    {
      if ( same( node_cost( g, n, costs ), costs[c] ) )
        v.push_back( n );
    }
    return kept.emplace( c, std::move( v ) ).first->second;
  };

  auto build = [&]( auto&& pick ) {
    aig_network net;
    std::vector<node_ref> pis;
    for ( uint32_t i = 0; i < num_pis; ++i )
      pis.push_back( net.create_pi() );
    std::unordered_map<class_id, node_ref> value;
    std::unordered_map<class_id, term_node> chosen;
    std::vector<class_id> stack{ root };
    while ( !stack.empty() )
    {
      const auto c = stack.back();
      if ( value.contains( c ) )
      {
        stack.pop_back();
        continue;
      }
      auto it = chosen.find( c );
      if ( it == chosen.end() )
      {
        it = chosen.emplace( c, pick( c, kept_nodes( c ) ) ).first;
        const auto& n = it->second;
        bool pushed = false;
        if ( n.op == term_op::not_op || n.op == term_op::and_op || n.op == term_op::or_op )
        {
          for ( auto child : { g.find( n.a ), g.find( n.b ) } )
          {
            if ( !value.contains( child ) )
            {
              if ( chosen.contains( child ) )
                throw std::logic_error( "cyclic extraction" );
              stack.push_back( child );
              pushed = true;
            }
            if ( n.op == term_op::not_op )
              break;
          }
        }
        if ( pushed )
          continue;
      }
      const auto& n = it->second;
      node_ref r = const0;
      switch ( n.op )
      {
      case term_op::var:
        if ( n.a >= num_pis )
          throw std::invalid_argument( "e-graph variable out of range" );
        r = pis[n.a];
        break;
      case term_op::constant:
        r = const0;
        break;
      case term_op::not_op:
        r = !value.at( g.find( n.a ) );
        break;
      case term_op::and_op:
        r = net.create_and( value.at( g.find( n.a ) ), value.at( g.find( n.b ) ) );
        break;
      case term_op::or_op:
        r = net.create_or( value.at( g.find( n.a ) ), value.at( g.find( n.b ) ) );
        break;
      }
      value.emplace( c, r );
      stack.pop_back();
    }
    net.create_po( value.at( root ) );
    return cleanup_dangling( net );
  };

  std::vector<aig_network> out;
  std::unordered_set<uint64_t> seen;
  auto admit = [&]( aig_network net ) {
    if ( seen.insert( structural_signature( net ) ).second )
      out.push_back( std::move( net ) );
  };

  admit( build( []( class_id, const std::vector<term_node>& nodes ) { return nodes.front(); } ) );

  std::mt19937_64 rng( seed );
  const uint32_t attempts = 4 * count;
  for ( uint32_t a = 0; a < attempts && out.size() < count; ++a )
  {
    admit( build( [&]( class_id, const std::vector<term_node>& nodes ) {
      std::uniform_int_distribution<std::size_t> dist( 0, nodes.size() - 1 );
      return nodes[dist( rng )];
    } ) );
  }
  if ( out.size() > count )
    out.resize( count );
  return out;
}

} // namespace aigc
