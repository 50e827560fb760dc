/*!
  \file term.hpp
  \brief Hash-consed Boolean terms over AND, OR, NOT and leaf variables.

  Terms are the interchange form between cone networks and the e-graph.
  A `term_dag` doubles as the pattern language of rewrite rules, where
  variables stand for pattern holes.
*/

#pragma once

#include <aigc/aig.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aigc
{

enum class term_op : uint8_t
{
  var,
  constant, /* false */
  not_op,
  and_op,
  or_op
};

/*! \brief Operator plus operands: variable index for `var`, child ids otherwise. */
struct term_node
{
  term_op op{ term_op::constant };
  uint32_t a{ 0 };
  uint32_t b{ 0 };

  bool operator==( const term_node& ) const = default;
};

struct term_node_hash
{
  std::size_t operator()( const term_node& n ) const noexcept
  {
    uint64_t h = static_cast<uint64_t>( n.op ) * 0x9e3779b97f4a7c15ull;
    h ^= ( static_cast<uint64_t>( n.a ) + 0x632be59bd9b4e019ull + ( h << 6 ) + ( h >> 2 ) );
    h ^= ( static_cast<uint64_t>( n.b ) + 0x85ebca6b2f1a5b31ull + ( h << 6 ) + ( h >> 2 ) );
    return static_cast<std::size_t>( h );
  }
};

class term_dag
{
public:
  uint32_t make_var( uint32_t index );
  uint32_t make_false() { return add( { term_op::constant, 0, 0 } ); }
  uint32_t make_not( uint32_t x ) { return add( { term_op::not_op, x, 0 } ); }
  uint32_t make_and( uint32_t x, uint32_t y ) { return add( { term_op::and_op, x, y } ); }
  uint32_t make_or( uint32_t x, uint32_t y ) { return add( { term_op::or_op, x, y } ); }

  uint32_t add( const term_node& n );

  const term_node& node( uint32_t id ) const { return nodes_[id]; }
  uint32_t size() const { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_vars() const { return num_vars_; }

  uint32_t root{ 0 };

  /*! \brief Value of `id` under `assignment` (bit i = variable i). */
  bool evaluate( uint32_t id, uint64_t assignment ) const;

  /*! \brief S-expression, e.g. `(and ?0 (not ?1))`. */
  std::string to_string( uint32_t id ) const;

private:
  std::vector<term_node> nodes_;
  std::unordered_map<term_node, uint32_t, term_node_hash> memo_;
  uint32_t num_vars_{ 0 };
};

class term_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Parses `(and x (not y))`-style expressions; symbols other than and/or/not/false are variables.

  Variables are numbered in order of first appearance unless `names` already
  assigns them; `names` is extended with new symbols.
*/
term_dag parse_term( std::string_view text, std::vector<std::string>& names );

/*! \brief Converts a single-PO network; PI i becomes variable i. Throws term_error otherwise. */
term_dag cone_to_term( const aig_network& cone_net );

/*! \brief Rebuilds a term as a strashed network with `num_pis` inputs and one PO. */
aig_network term_to_aig( const term_dag& t, uint32_t num_pis );

} // namespace aigc
