/*!
  \file choice.hpp
  \brief AIG with choices: equivalence classes of a representative node and
         dangling, functionally equivalent choice roots.

  The quotient graph contracts every class onto its representative; it must
  stay acyclic for cut enumeration. Choice roots must have no fanout.

  Serialized form: a regular AIGER file whose trailing outputs are the choice
  roots, plus comment records

      c CHOICE-OUTPUTS <k>
      c CHOICE <rep-literal> <choice-literal> ...

  where a choice literal already carries the phase, i.e. it evaluates to the
  same function as the representative literal.
*/

#pragma once

#include <aigc/aig.hpp>
#include <aigc/cone.hpp>
#include <aigc/mutate.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aigc
{

struct choice_entry
{
  uint32_t node{ 0 };
  /*! True if the choice root computes the complement of the representative. */
  bool phase{ false };

  bool operator==( const choice_entry& ) const = default;
};

struct equivalence_class
{
  uint32_t representative{ 0 };
  std::vector<choice_entry> choices;

  bool operator==( const equivalence_class& ) const = default;
};

struct choice_network
{
  aig_network net;
  std::vector<equivalence_class> classes;
  /*! Representative and choice nodes -> class index. */
  std::unordered_map<uint32_t, uint32_t> class_of;

  /*! Class representative of `n` if `n` belongs to a class, otherwise `n`. */
  uint32_t quotient( uint32_t n ) const;
  uint32_t num_choices() const;
};

/*! \brief Wraps a plain network (no classes). */
choice_network make_choice_network( aig_network net );

/*! \brief Representative cone with its selected variants, best first. */
struct cone_selection
{
  cone rc;
  std::vector<candidate_variant> variants;
};

class choice_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Inlines every variant through strash and records its root as a choice.

  Variants that hash onto the representative or onto a node that already is a
  class member, a PI or the constant are dropped. Throws `choice_error` if a
  support node does not exist or a variant's PI count differs from its cone's
  support size.
*/
choice_network build_choice_network( const aig_network& subject, const std::vector<cone_selection>& selections );

/*! \brief Drops choices whose root has fanout or whose fanin cone reaches
           their own class in the quotient graph, then removes empty classes
           and logic that only fed removed choices. */
choice_network remove_bad_choices( const choice_network& cn );

struct validation_report
{
  uint32_t classes{ 0 };
  uint32_t choices{ 0 };
  uint32_t fanout_violations{ 0 };
  bool quotient_acyclic{ true };
  uint32_t functional_violations{ 0 };
  std::vector<std::string> messages;

  bool ok() const { return fanout_violations == 0 && quotient_acyclic && functional_violations == 0; }
};

/*! \brief Checks fanout-freedom, quotient acyclicity and per-class simulation consistency. */
validation_report validate_choice_network( const choice_network& cn, std::size_t n_words = 16, uint64_t seed = 0 );

/*! \brief Quotient-graph nodes in topological order, or empty if a cycle exists.

  Only nodes in the quotient image appear: class members other than the
  representative are folded into it.
*/
std::vector<uint32_t> quotient_topological_order( const choice_network& cn );

struct class_summary
{
  uint32_t classes{ 0 };
  uint32_t total_choices{ 0 };
  /*! choices per class -> number of classes */
  std::map<uint32_t, uint32_t> histogram;
};

class_summary class_stats( const choice_network& cn );

/*! \brief Nodes reachable from the POs only through choice roots. */
std::vector<bool> choice_logic_nodes( const choice_network& cn );

/*! \brief Same network with every class dropped and the dangling choice logic removed. */
choice_network strip_choices( const choice_network& cn );

std::string write_choice_network( const choice_network& cn, bool binary = false );
choice_network read_choice_network( std::string_view bytes );

} // namespace aigc
