/*!
  \file simulate.hpp
  \brief Bit-parallel simulation and cone truth tables.
*/

#pragma once

#include <aigc/aig.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aigc
{

/*! \brief Per-PI input blocks: `num_pis x n_words` 64-bit words, row-major. */
class pattern_set
{
public:
  pattern_set() = default;
  pattern_set( uint32_t num_pis, std::size_t n_words )
      : num_pis_( num_pis ), n_words_( n_words ), words_( num_pis * n_words, 0u ) {}

  uint32_t num_pis() const { return num_pis_; }
  std::size_t n_words() const { return n_words_; }

  std::span<uint64_t> operator[]( uint32_t pi ) { return { words_.data() + pi * n_words_, n_words_ }; }
  std::span<const uint64_t> operator[]( uint32_t pi ) const { return { words_.data() + pi * n_words_, n_words_ }; }

  bool get_bit( uint32_t pi, std::size_t pattern ) const
  {
    return ( ( *this )[pi][pattern / 64] >> ( pattern % 64 ) ) & 1u;
  }

private:
  uint32_t num_pis_{ 0 };
  std::size_t n_words_{ 0 };
  std::vector<uint64_t> words_;
};

/*! \brief Uniform random patterns from a seeded 64-bit Mersenne twister. */
pattern_set random_patterns( uint32_t num_pis, std::size_t n_words, uint64_t seed );

/*! \brief All 2^num_pis assignments; pattern i assigns bit j of i to PI j. Requires num_pis <= 16. */
pattern_set exhaustive_patterns( uint32_t num_pis );

/*! \brief One simulation vector of `n_words` words per network node. */
class sim_vectors
{
public:
  sim_vectors() = default;
  sim_vectors( uint32_t num_nodes, std::size_t n_words )
      : num_nodes_( num_nodes ), n_words_( n_words ), words_( num_nodes * n_words, 0u ) {}

  uint32_t num_nodes() const { return num_nodes_; }
  std::size_t n_words() const { return n_words_; }

  std::span<uint64_t> operator[]( uint32_t node ) { return { words_.data() + node * n_words_, n_words_ }; }
  std::span<const uint64_t> operator[]( uint32_t node ) const { return { words_.data() + node * n_words_, n_words_ }; }

  /*! \brief Vector of an edge, with its complement applied. */
  std::vector<uint64_t> value( node_ref f ) const;

private:
  uint32_t num_nodes_{ 0 };
  std::size_t n_words_{ 0 };
  std::vector<uint64_t> words_;
};

class simulation_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Simulates every node in index (topological) order.

  Throws `simulation_error` if the pattern set does not match the PI count.
*/
sim_vectors simulate( const aig_network& net, const pattern_set& patterns );

/*! \brief Truth table over at most 16 variables; bit i is the value at assignment i. */
class truth_table
{
public:
  truth_table() = default;
  explicit truth_table( uint32_t num_vars );

  uint32_t num_vars() const { return num_vars_; }
  uint64_t num_bits() const { return uint64_t{ 1 } << num_vars_; }
  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  bool get_bit( uint64_t i ) const { return ( words_[i / 64] >> ( i % 64 ) ) & 1u; }
  void set_bit( uint64_t i, bool v );

  /*! \brief Clears bits beyond 2^num_vars in the last word. */
  void mask_tail();

  /*! \brief Bits from the highest assignment down to assignment 0. */
  std::string to_binary() const;

  bool operator==( const truth_table& other ) const = default;

private:
  uint32_t num_vars_{ 0 };
  std::vector<uint64_t> words_{ 0u };
};

/*! \brief Projection function of variable `var` over `num_vars` variables. */
truth_table projection( uint32_t num_vars, uint32_t var );

class cone_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Function of `root` in terms of `leaves`.

  Throws `cone_error` if more than 16 leaves are given or if some path from
  `root` reaches a PI without passing a leaf.
*/
truth_table compute_truth_table( const aig_network& net, node_ref root, std::span<const uint32_t> leaves );

/*! \brief Truth tables of all POs under exhaustive simulation (num_pis <= 16). */
std::vector<truth_table> po_truth_tables( const aig_network& net );

} // namespace aigc
