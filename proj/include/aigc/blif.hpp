/*!
  \file blif.hpp
  \brief Reader for combinational BLIF (`.names` covers) into an AIG.
*/

#pragma once

#include <aigc/aig.hpp>

#include <stdexcept>
#include <string_view>

namespace aigc
{

class blif_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Builds an AIG whose PIs/POs follow the `.inputs`/`.outputs` order. */
aig_network read_blif( std::string_view text );

} // namespace aigc
