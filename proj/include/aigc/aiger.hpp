/*!
  \file aiger.hpp
  \brief AIGER reader and writer (ASCII `aag` and binary `aig`, combinational subset).

  Latches are cut: latch outputs become additional PIs after the regular
  inputs, latch next-state functions become additional POs after the regular
  outputs. Symbol tables are skipped on read; comment lines can be collected.
*/

#pragma once

#include <aigc/aig.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigc
{

class aiger_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Parses an AIGER file.

  Comment lines (after the `c` marker) are appended to `comments` if given.
  `var_map`, if given, receives the edge each AIGER variable was mapped to.
*/
aig_network read_aiger( std::string_view bytes, std::vector<std::string>* comments = nullptr,
                        std::vector<node_ref>* var_map = nullptr );

aig_network read_aiger_file( const std::filesystem::path& path, std::vector<std::string>* comments = nullptr );

struct aiger_write_options
{
  bool binary{ false };
  /*! Lines emitted after the `c` marker; no comment section if empty. */
  std::vector<std::string> comments;
};

std::string write_aiger( const aig_network& net, const aiger_write_options& opts = {} );

/*! \brief AIGER variable assigned to each node by the writer (PIs first, then ANDs by index). */
std::vector<uint32_t> aiger_variable_map( const aig_network& net );

std::string read_file( const std::filesystem::path& path );
void write_file( const std::filesystem::path& path, std::string_view content );

} // namespace aigc
