#include <aigc/term.hpp>

#include <algorithm>
#include <cctype>

namespace aigc
{

uint32_t term_dag::make_var( uint32_t index )
{
  num_vars_ = std::max( num_vars_, index + 1 );
  return add( { term_op::var, index, 0 } );
}

uint32_t term_dag::add( const term_node& n )
{
  if ( auto it = memo_.find( n ); it != memo_.end() )
    return it->second;
  if ( n.op == term_op::var )
    num_vars_ = std::max( num_vars_, n.a + 1 );
  const auto id = size();
  nodes_.push_back( n );
  memo_.emplace( n, id );
  return id;
}

bool term_dag::evaluate( uint32_t id, uint64_t assignment ) const
{
  /* children always precede parents, so one forward sweep suffices */
  std::vector<uint8_t> value( id + 1, 0 );
  for ( uint32_t i = 0; i <= id; ++i )
  {
    const auto& n = nodes_[i];
    switch ( n.op )
    {
    case term_op::var:
      value[i] = ( assignment >> n.a ) & 1u;
      break;
    case term_op::constant:
      value[i] = 0;
      break;
    case term_op::not_op:
      value[i] = !value[n.a];
      break;
    case term_op::and_op:
      value[i] = value[n.a] && value[n.b];
      break;
    case term_op::or_op:
      value[i] = value[n.a] || value[n.b];
      break;
    }
  }
  return value[id] != 0;
}

std::string term_dag::to_string( uint32_t id ) const
{
  const auto& n = nodes_[id];
  switch ( n.op )
  {
  case term_op::var:
    return "?" + std::to_string( n.a );
  case term_op::constant:
    return "false";
  case term_op::not_op:
    return "(not " + to_string( n.a ) + ")";
  case term_op::and_op:
    return "(and " + to_string( n.a ) + " " + to_string( n.b ) + ")";
  case term_op::or_op:
    return "(or " + to_string( n.a ) + " " + to_string( n.b ) + ")";
  }
  return {};
}

namespace
{

class sexpr_parser
{
public:
  sexpr_parser( std::string_view text, term_dag& dag, std::vector<std::string>& names )
      : text_( text ), dag_( dag ), names_( names ) {}

  uint32_t parse()
  {
    const auto id = expr();
    skip_space();
    if ( pos_ != text_.size() )
      throw term_error( "trailing input in term '" + std::string( text_ ) + "'" );
    return id;
  }

private:
  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  std::string symbol()
  {
    skip_space();
    const auto start = pos_;
    while ( pos_ < text_.size() && !std::isspace( static_cast<unsigned char>( text_[pos_] ) ) && text_[pos_] != '(' &&
            text_[pos_] != ')' )
      ++pos_;
    if ( start == pos_ )
      throw term_error( "expected symbol in term '" + std::string( text_ ) + "'" );
    return std::string( text_.substr( start, pos_ - start ) );
  }

  uint32_t expr()
  {
    skip_space();
    if ( pos_ >= text_.size() )
      throw term_error( "unexpected end of term '" + std::string( text_ ) + "'" );
    if ( text_[pos_] != '(' )
    {
      const auto s = symbol();
      if ( s == "false" )
        return dag_.make_false();
      auto it = std::find( names_.begin(), names_.end(), s );
      const auto index = static_cast<uint32_t>( it - names_.begin() );
      if ( it == names_.end() )
        names_.push_back( s );
      return dag_.make_var( index );
    }
    ++pos_;
    const auto op = symbol();
    uint32_t id = 0;
    if ( op == "not" )
      id = dag_.make_not( expr() );
    else if ( op == "and" || op == "or" )
    {
      const auto x = expr();
      const auto y = expr();
      id = op == "and" ? dag_.make_and( x, y ) : dag_.make_or( x, y );
    }
    else
      throw term_error( "unknown operator '" + op + "'" );
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != ')' )
      throw term_error( "expected ')' in term '" + std::string( text_ ) + "'" );
    ++pos_;
    return id;
  }

  std::string_view text_;
  std::size_t pos_{ 0 };
  term_dag& dag_;
  std::vector<std::string>& names_;
};

} // namespace

term_dag parse_term( std::string_view text, std::vector<std::string>& names )
{
  term_dag dag;
  dag.root = sexpr_parser( text, dag, names ).parse();
  return dag;
}

term_dag cone_to_term( const aig_network& cone_net )
{
  if ( cone_net.num_pos() != 1 )
    throw term_error( "cone network must have exactly one PO, found " + std::to_string( cone_net.num_pos() ) );
  term_dag dag;
  std::vector<uint32_t> id( cone_net.size(), 0 );
  id[0] = dag.make_false();
  for ( uint32_t i = 0; i < cone_net.num_pis(); ++i )
    id[cone_net.pis()[i]] = dag.make_var( i );

  auto edge = [&]( node_ref f ) { return f.complemented() ? dag.make_not( id[f.index()] ) : id[f.index()]; };
  cone_net.foreach_and( [&]( uint32_t n ) { id[n] = dag.make_and( edge( cone_net.fanin0( n ) ), edge( cone_net.fanin1( n ) ) ); } );
  dag.root = edge( cone_net.po_at( 0 ) );
  return dag;
}

aig_network term_to_aig( const term_dag& t, uint32_t num_pis )
{
  aig_network net;
  std::vector<node_ref> pis;
  for ( uint32_t i = 0; i < num_pis; ++i )
    pis.push_back( net.create_pi() );
  std::vector<node_ref> value( t.size(), const0 );
  std::vector<bool> live( t.size(), false );
  live[t.root] = true;
  for ( uint32_t i = t.root + 1; i-- > 0; )
  {
    const auto& n = t.node( i );
    if ( !live[i] )
      continue;
    if ( n.op == term_op::not_op || n.op == term_op::and_op || n.op == term_op::or_op )
      live[n.a] = true;
    if ( n.op == term_op::and_op || n.op == term_op::or_op )
      live[n.b] = true;
  }
  for ( uint32_t i = 0; i <= t.root; ++i )
  {
    if ( !live[i] )
      continue;
    const auto& n = t.node( i );
    switch ( n.op )
    {
    case term_op::var:
      if ( n.a >= num_pis )
        throw term_error( "term variable " + std::to_string( n.a ) + " out of range" );
      value[i] = pis[n.a];
      break;
    case term_op::constant:
      value[i] = const0;
      break;
    case term_op::not_op:
      value[i] = !value[n.a];
      break;
    case term_op::and_op:
      value[i] = net.create_and( value[n.a], value[n.b] );
      break;
    case term_op::or_op:
      value[i] = net.create_or( value[n.a], value[n.b] );
      break;
    }
  }
  net.create_po( value[t.root] );
  return net;
}

} // namespace aigc
