#include <aigc/blif.hpp>

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace aigc
{

namespace
{

struct cover
{
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, char>> cubes;
};

std::vector<std::string> split( const std::string& line )
{
  std::istringstream is( line );
  std::vector<std::string> out;
  std::string tok;
  while ( is >> tok )
    out.push_back( tok );
  return out;
}

} // namespace

aig_network read_blif( std::string_view text )
{
  std::vector<std::string> inputs, outputs;
  std::unordered_map<std::string, cover> covers;
  cover* current = nullptr;
  std::string pending;

  std::istringstream is{ std::string( text ) };
  std::string raw;
  while ( std::getline( is, raw ) )
  {
    if ( const auto hash = raw.find( '#' ); hash != std::string::npos )
      raw.erase( hash );
    if ( !raw.empty() && raw.back() == '\r' )
      raw.pop_back();
    if ( !raw.empty() && raw.back() == '\\' )
    {
      raw.pop_back();
      pending += raw + ' ';
      continue;
    }
    const auto tokens = split( pending + raw );
    pending.clear();
    if ( tokens.empty() )
      continue;
    const auto& head = tokens[0];
    if ( head == ".model" || head == ".end" )
    {
      current = nullptr;
    }
    else if ( head == ".inputs" )
    {
      inputs.insert( inputs.end(), tokens.begin() + 1, tokens.end() );
      current = nullptr;
    }
    else if ( head == ".outputs" )
    {
      outputs.insert( outputs.end(), tokens.begin() + 1, tokens.end() );
      current = nullptr;
    }
    else if ( head == ".names" )
    {
      if ( tokens.size() < 2 )
        throw blif_error( ".names without output" );
      const auto& out = tokens.back();
      if ( covers.contains( out ) )
        throw blif_error( "signal '" + out + "' defined twice" );
      auto& c = covers[out];
      c.inputs.assign( tokens.begin() + 1, tokens.end() - 1 );
      current = &c;
    }
    else if ( head[0] == '.' )
    {
      throw blif_error( "unsupported BLIF construct '" + head + "'" );
    }
    else
    {
      if ( current == nullptr )
        throw blif_error( "cube line outside of .names" );
      if ( current->inputs.empty() )
      {
        if ( tokens.size() != 1 || tokens[0].size() != 1 )
          throw blif_error( "malformed constant cover" );
        current->cubes.emplace_back( "", tokens[0][0] );
      }
      else
      {
        if ( tokens.size() != 2 || tokens[0].size() != current->inputs.size() || tokens[1].size() != 1 )
          throw blif_error( "malformed cube '" + raw + "'" );
        current->cubes.emplace_back( tokens[0], tokens[1][0] );
      }
    }
  }

  aig_network net;
  std::unordered_map<std::string, node_ref> signal;
  for ( const auto& name : inputs )
    signal.emplace( name, net.create_pi() );

  std::unordered_map<std::string, bool> in_progress;
  auto build = [&]( auto&& self, const std::string& name ) -> node_ref {
    if ( auto it = signal.find( name ); it != signal.end() )
      return it->second;
    auto cit = covers.find( name );
    if ( cit == covers.end() )
      throw blif_error( "signal '" + name + "' is not defined" );
    if ( in_progress[name] )
      throw blif_error( "combinational cycle through '" + name + "'" );
    in_progress[name] = true;
    const auto& c = cit->second;
    std::vector<node_ref> fanins;
    for ( const auto& in : c.inputs )
      fanins.push_back( self( self, in ) );

    node_ref sum = const0;
    bool offset = false;
    for ( std::size_t i = 0; i < c.cubes.size(); ++i )
    {
      const auto& [cube, value] = c.cubes[i];
      if ( value != '0' && value != '1' )
        throw blif_error( "invalid cover output value in '" + name + "'" );
      if ( i > 0 && ( value == '0' ) != offset )
        throw blif_error( "mixed on-set and off-set cover in '" + name + "'" );
      offset = value == '0';
      node_ref product = const1;
      for ( std::size_t j = 0; j < cube.size(); ++j )
      {
        if ( cube[j] == '1' )
          product = net.create_and( product, fanins[j] );
        else if ( cube[j] == '0' )
          product = net.create_and( product, !fanins[j] );
        else if ( cube[j] != '-' )
          throw blif_error( "invalid cube character in '" + name + "'" );
      }
      sum = net.create_or( sum, product );
    }
    const auto result = offset ? !sum : sum;
    signal.emplace( name, result );
    return result;
  };

  for ( const auto& name : outputs )
    net.create_po( build( build, name ) );
  return net;
}

} // namespace aigc
