/*!
  \file egraph.hpp
  \brief E-graph with rule-driven equality saturation and tree-cost extraction.
*/

#pragma once

#include <aigc/cone.hpp>
#include <aigc/term.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace aigc
{

/*! \brief Rewrite `lhs => rhs`; both sides are patterns whose variables are holes. */
struct rewrite_rule
{
  std::string name;
  term_dag lhs;
  term_dag rhs;
};

class rule_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Parses and validates a rule by enumerating all assignments of its variables.

  Throws `rule_error` if the sides differ on any assignment or if the right
  side uses a variable that the left side does not bind.
*/
rewrite_rule make_rule( std::string name, std::string_view lhs, std::string_view rhs );

/*! \brief Commutativity, associativity (both directions), double negation,
           idempotence, annihilation and De Morgan in both directions. */
std::vector<rewrite_rule> default_rules();

struct saturation_limits
{
  uint32_t max_iterations{ 8 };
  std::size_t max_enodes{ 50000 };
  std::chrono::milliseconds time_budget{ 5000 };
};

using class_id = uint32_t;

class egraph
{
public:
  class_id add( term_node n );
  /*! \brief Inserts every node of `t`; returns the class of `t.root`. */
  class_id add_term( const term_dag& t );

  class_id find( class_id c ) const;
  bool merge( class_id a, class_id b );

  /*! \brief Restores congruence closure and hash-cons invariants after merges. */
  void rebuild();

  std::size_t num_enodes() const { return memo_.size(); }
  std::size_t num_classes() const;

  /*! \brief Canonical class ids, ascending. */
  std::vector<class_id> class_ids() const;
  const std::vector<term_node>& nodes( class_id c ) const { return classes_[find( c )].nodes; }

  /*! \brief Variable count of the terms inserted so far. */
  uint32_t num_vars() const { return num_vars_; }

private:
  term_node canonicalize( term_node n ) const;

  struct eclass
  {
    std::vector<term_node> nodes;
  };

  mutable std::vector<class_id> parent_;
  std::vector<eclass> classes_;
  std::unordered_map<term_node, class_id, term_node_hash> memo_;
  uint32_t num_vars_{ 0 };
  bool dirty_{ false };
};

enum class stop_reason
{
  saturated,
  iteration_limit,
  node_limit,
  time_limit
};

std::string_view stop_reason_name( stop_reason r );

struct saturation_result
{
  egraph graph;
  class_id root{ 0 };
  uint32_t iterations{ 0 };
  stop_reason reason{ stop_reason::saturated };
};

saturation_result saturate( const term_dag& seed, const std::vector<rewrite_rule>& rules,
                            const saturation_limits& limits = {} );

/*! \brief Tree cost of an e-node: AST depth and size over AND/OR (NOT and leaves are free),
           plus the raw AST node count used to keep extraction acyclic. */
struct tree_cost
{
  uint64_t depth{ 0 };
  uint64_t size{ 0 };
  uint64_t nodes{ 0 };
};

/*! \brief Up to `count` structurally distinct extractions of the root class.

  The first is the deterministic minimum-cost choice; further ones break ties
  among cost-minimal e-nodes at random. Throws std::invalid_argument on an
  empty e-graph.
*/
std::vector<aig_network> extract_variants( const egraph& g, class_id root, uint32_t num_pis, opt_mode mode,
                                           uint32_t count, uint64_t seed );

/*! \brief Minimum cost of every canonical class under `mode`. */
std::unordered_map<class_id, tree_cost> class_costs( const egraph& g, opt_mode mode );

} // namespace aigc
