#include <aigc/aiger.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace aigc
{

namespace
{

class reader
{
public:
  explicit reader( std::string_view data ) : data_( data ) {}

  bool at_end() const { return pos_ >= data_.size(); }
  std::size_t position() const { return pos_; }

  std::string_view line()
  {
    const auto end = data_.find( '\n', pos_ );
    const auto stop = end == std::string_view::npos ? data_.size() : end;
    auto l = data_.substr( pos_, stop - pos_ );
    pos_ = end == std::string_view::npos ? data_.size() : end + 1;
    if ( !l.empty() && l.back() == '\r' )
      l.remove_suffix( 1 );
    return l;
  }

  std::string_view rest() const { return data_.substr( pos_ ); }

  uint32_t binary_delta()
  {
    uint32_t x = 0;
    uint32_t shift = 0;
    while ( true )
    {
      if ( at_end() )
        throw aiger_error( "truncated binary delta encoding" );
      const auto ch = static_cast<uint8_t>( data_[pos_++] );
      if ( shift > 28 )
        throw aiger_error( "binary delta exceeds 32 bits" );
      x |= static_cast<uint32_t>( ch & 0x7f ) << shift;
      if ( ( ch & 0x80 ) == 0 )
        return x;
      shift += 7;
    }
  }

private:
  std::string_view data_;
  std::size_t pos_{ 0 };
};

std::vector<uint32_t> parse_numbers( std::string_view l, std::string_view what )
{
  std::vector<uint32_t> out;
  std::size_t i = 0;
  while ( i < l.size() )
  {
    while ( i < l.size() && ( l[i] == ' ' || l[i] == '\t' ) )
      ++i;
    if ( i >= l.size() )
      break;
    uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars( l.data() + i, l.data() + l.size(), v );
    if ( ec != std::errc{} )
      throw aiger_error( "malformed " + std::string( what ) + " line: '" + std::string( l ) + "'" );
    i = static_cast<std::size_t>( ptr - l.data() );
    if ( i < l.size() && l[i] != ' ' && l[i] != '\t' )
      throw aiger_error( "malformed " + std::string( what ) + " line: '" + std::string( l ) + "'" );
    out.push_back( v );
  }
  return out;
}

void collect_trailer( reader& r, std::vector<std::string>* comments )
{
  bool in_comments = false;
  while ( !r.at_end() )
  {
    const auto l = r.line();
    if ( in_comments )
    {
      if ( comments )
        comments->emplace_back( l );
      continue;
    }
    if ( !l.empty() && l[0] == 'c' && ( l.size() == 1 || l[1] == ' ' || l[1] == '\t' ) )
    {
      in_comments = true;
      if ( l.size() > 1 && comments )
        comments->emplace_back( l.substr( 2 ) );
    }
    /* symbol table entries are skipped */
  }
}

struct header
{
  bool binary;
  uint32_t max_var, inputs, latches, outputs, ands;
};

header parse_header( std::string_view l )
{
  header h{};
  if ( l.starts_with( "aag " ) )
    h.binary = false;
  else if ( l.starts_with( "aig " ) )
    h.binary = true;
  else
    throw aiger_error( "malformed header: expected 'aag' or 'aig'" );
  const auto nums = parse_numbers( l.substr( 4 ), "header" );
  if ( nums.size() < 5 )
    throw aiger_error( "malformed header: expected M I L O A" );
  for ( std::size_t i = 5; i < nums.size(); ++i )
  {
    if ( nums[i] != 0 )
      throw aiger_error( "unsupported header: bad-state, constraint, justice or fairness sections" );
  }
  h.max_var = nums[0];
  h.inputs = nums[1];
  h.latches = nums[2];
  h.outputs = nums[3];
  h.ands = nums[4];
  if ( static_cast<uint64_t>( h.inputs ) + h.latches + h.ands > h.max_var )
    throw aiger_error( "malformed header: M smaller than I + L + A" );
  if ( h.binary && h.inputs + h.latches + h.ands != h.max_var )
    throw aiger_error( "malformed binary header: M must equal I + L + A" );
  return h;
}

} // namespace

aig_network read_aiger( std::string_view bytes, std::vector<std::string>* comments, std::vector<node_ref>* var_map )
{
  reader r( bytes );
  if ( r.at_end() )
    throw aiger_error( "empty input" );
  const auto h = parse_header( r.line() );
  const uint32_t max_lit = 2 * h.max_var + 1;

  auto check_lit = [&]( uint32_t lit ) {
    if ( lit > max_lit )
      throw aiger_error( "literal " + std::to_string( lit ) + " exceeds declared maximum " + std::to_string( max_lit ) );
  };
  auto next_line = [&]( std::string_view what ) {
    if ( r.at_end() )
      throw aiger_error( "unexpected end of file in " + std::string( what ) + " section" );
    return r.line();
  };

  /* variable -> definition */
  enum class def_kind : uint8_t { undefined, input, and_gate };
  std::vector<def_kind> kind( h.max_var + 1, def_kind::undefined );
  std::vector<std::pair<uint32_t, uint32_t>> and_def( h.max_var + 1 );
  std::vector<uint32_t> input_vars;
  std::vector<uint32_t> latch_vars;
  std::vector<uint32_t> latch_next;
  std::vector<uint32_t> output_lits;
  std::vector<uint32_t> and_order;

  auto define_input = [&]( uint32_t lit ) {
    check_lit( lit );
    if ( lit < 2 || ( lit & 1u ) )
      throw aiger_error( "invalid input literal " + std::to_string( lit ) );
    if ( kind[lit >> 1] != def_kind::undefined )
      throw aiger_error( "literal " + std::to_string( lit ) + " defined twice" );
    kind[lit >> 1] = def_kind::input;
  };

  for ( uint32_t i = 0; i < h.inputs; ++i )
  {
    uint32_t lit = 2 * ( i + 1 );
    if ( !h.binary )
    {
      const auto nums = parse_numbers( next_line( "input" ), "input" );
      if ( nums.size() != 1 )
        throw aiger_error( "malformed input line" );
      lit = nums[0];
    }
    define_input( lit );
    input_vars.push_back( lit >> 1 );
  }
  for ( uint32_t i = 0; i < h.latches; ++i )
  {
    const auto nums = parse_numbers( next_line( "latch" ), "latch" );
    uint32_t lhs = 2 * ( h.inputs + i + 1 );
    std::size_t next_pos = 0;
    if ( !h.binary )
    {
      if ( nums.size() < 2 || nums.size() > 3 )
        throw aiger_error( "malformed latch line" );
      lhs = nums[0];
      next_pos = 1;
    }
    else if ( nums.empty() || nums.size() > 2 )
      throw aiger_error( "malformed latch line" );
    define_input( lhs );
    check_lit( nums[next_pos] );
    latch_vars.push_back( lhs >> 1 );
    latch_next.push_back( nums[next_pos] );
  }
  for ( uint32_t i = 0; i < h.outputs; ++i )
  {
    const auto nums = parse_numbers( next_line( "output" ), "output" );
    if ( nums.size() != 1 )
      throw aiger_error( "malformed output line" );
    check_lit( nums[0] );
    output_lits.push_back( nums[0] );
  }
  for ( uint32_t i = 0; i < h.ands; ++i )
  {
    uint32_t lhs, rhs0, rhs1;
    if ( h.binary )
    {
      lhs = 2 * ( h.inputs + h.latches + i + 1 );
      const auto d0 = r.binary_delta();
      if ( d0 == 0 || d0 > lhs )
        throw aiger_error( "invalid binary delta in AND " + std::to_string( lhs ) );
      rhs0 = lhs - d0;
      const auto d1 = r.binary_delta();
      if ( d1 > rhs0 )
        throw aiger_error( "invalid binary delta in AND " + std::to_string( lhs ) );
      rhs1 = rhs0 - d1;
    }
    else
    {
      const auto nums = parse_numbers( next_line( "and" ), "and" );
      if ( nums.size() != 3 )
        throw aiger_error( "malformed and line" );
      lhs = nums[0];
      rhs0 = nums[1];
      rhs1 = nums[2];
    }
    check_lit( lhs );
    check_lit( rhs0 );
    check_lit( rhs1 );
    if ( lhs < 2 || ( lhs & 1u ) )
      throw aiger_error( "invalid AND literal " + std::to_string( lhs ) );
    if ( kind[lhs >> 1] != def_kind::undefined )
      throw aiger_error( "literal " + std::to_string( lhs ) + " defined twice" );
    kind[lhs >> 1] = def_kind::and_gate;
    and_def[lhs >> 1] = { rhs0, rhs1 };
    and_order.push_back( lhs >> 1 );
  }
  collect_trailer( r, comments );

  aig_network net;
  std::vector<node_ref> map( h.max_var + 1, const0 );
  std::vector<uint8_t> state( h.max_var + 1, 0 ); /* 0 new, 1 on stack, 2 done */
  state[0] = 2;
  for ( auto v : input_vars )
  {
    map[v] = net.create_pi();
    state[v] = 2;
  }
  for ( auto v : latch_vars )
  {
    map[v] = net.create_pi();
    state[v] = 2;
  }

  auto resolve = [&]( uint32_t lit ) { return map[lit >> 1] ^ ( ( lit & 1u ) != 0 ); };

  /* ASCII files need not list ANDs in topological order */
  auto build = [&]( uint32_t root ) {
    std::vector<uint32_t> stack{ root };
    while ( !stack.empty() )
    {
      const auto v = stack.back();
      if ( state[v] == 2 )
      {
        stack.pop_back();
        continue;
      }
      if ( kind[v] != def_kind::and_gate )
        throw aiger_error( "literal " + std::to_string( 2 * v ) + " used but not defined" );
      const auto [a, b] = and_def[v];
      if ( state[v] == 1 )
      {
        map[v] = net.create_and_raw( resolve( a ), resolve( b ) );
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      state[v] = 1;
      for ( auto fanin : { a >> 1, b >> 1 } )
      {
        if ( state[fanin] == 1 )
          throw aiger_error( "combinational cycle through literal " + std::to_string( 2 * fanin ) );
        if ( state[fanin] == 0 )
          stack.push_back( fanin );
      }
    }
  };
  for ( auto v : and_order )
    build( v );

  auto output = [&]( uint32_t lit ) {
    if ( state[lit >> 1] != 2 )
      throw aiger_error( "output literal " + std::to_string( lit ) + " not defined" );
    net.create_po( resolve( lit ) );
  };
  for ( auto lit : output_lits )
    output( lit );
  for ( auto lit : latch_next )
    output( lit );
  if ( var_map )
    *var_map = map;
  return net;
}

aig_network read_aiger_file( const std::filesystem::path& path, std::vector<std::string>* comments )
{
  return read_aiger( read_file( path ), comments );
}

std::vector<uint32_t> aiger_variable_map( const aig_network& net )
{
  std::vector<uint32_t> var( net.size(), 0u );
  uint32_t next = 1;
  for ( auto pi : net.pis() )
    var[pi] = next++;
  net.foreach_and( [&]( uint32_t n ) { var[n] = next++; } );
  return var;
}

std::string write_aiger( const aig_network& net, const aiger_write_options& opts )
{
  const auto var = aiger_variable_map( net );
  auto lit = [&]( node_ref f ) { return 2 * var[f.index()] + ( f.complemented() ? 1u : 0u ); };

  std::ostringstream os;
  const auto max_var = net.num_pis() + net.num_ands();
  os << ( opts.binary ? "aig " : "aag " ) << max_var << ' ' << net.num_pis() << " 0 " << net.num_pos() << ' '
     << net.num_ands() << '\n';
  if ( !opts.binary )
  {
    for ( auto pi : net.pis() )
      os << 2 * var[pi] << '\n';
  }
  for ( auto po : net.pos() )
    os << lit( po ) << '\n';
  if ( opts.binary )
  {
    auto encode = [&]( uint32_t x ) {
      while ( x & ~0x7fu )
      {
        os.put( static_cast<char>( ( x & 0x7fu ) | 0x80u ) );
        x >>= 7;
      }
      os.put( static_cast<char>( x ) );
    };
    net.foreach_and( [&]( uint32_t n ) {
      const auto lhs = 2 * var[n];
      const auto a = lit( net.fanin0( n ) );
      const auto b = lit( net.fanin1( n ) );
      const auto hi = std::max( a, b );
      const auto lo = std::min( a, b );
      encode( lhs - hi );
      encode( hi - lo );
    } );
  }
  else
  {
    net.foreach_and( [&]( uint32_t n ) {
      os << 2 * var[n] << ' ' << lit( net.fanin0( n ) ) << ' ' << lit( net.fanin1( n ) ) << '\n';
    } );
  }
  if ( !opts.comments.empty() )
  {
    os << "c\n";
    for ( const auto& c : opts.comments )
      os << c << '\n';
  }
  return os.str();
}

std::string read_file( const std::filesystem::path& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw aiger_error( "cannot open " + path.string() );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file( const std::filesystem::path& path, std::string_view content )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw aiger_error( "cannot write " + path.string() );
  out.write( content.data(), static_cast<std::streamsize>( content.size() ) );
  if ( !out )
    throw aiger_error( "write failed for " + path.string() );
}

} // namespace aigc
