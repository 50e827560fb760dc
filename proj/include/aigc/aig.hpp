/*!
  \file aig.hpp
  \brief And-inverter graph with structural hashing.

  Nodes are stored in creation order, which is always a topological order:
  every fanin refers to a node with a smaller index. Node 0 is the constant
  false node; inversion lives on the edges only.
*/

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace aigc
{

/*! \brief Edge into a node, optionally complemented.

  Encoded as an AIGER literal: `2 * index + complemented`.
*/
class node_ref
{
public:
  constexpr node_ref() = default;
  constexpr node_ref( uint32_t index, bool complemented )
      : data_( ( index << 1 ) | static_cast<uint32_t>( complemented ) ) {}

  static constexpr node_ref from_literal( uint32_t literal )
  {
    node_ref r;
    r.data_ = literal;
    return r;
  }

  constexpr uint32_t index() const { return data_ >> 1; }
  constexpr bool complemented() const { return ( data_ & 1u ) != 0; }
  constexpr uint32_t literal() const { return data_; }

  constexpr node_ref operator!() const { return from_literal( data_ ^ 1u ); }
  constexpr node_ref operator^( bool c ) const { return from_literal( data_ ^ static_cast<uint32_t>( c ) ); }
  constexpr node_ref regular() const { return from_literal( data_ & ~1u ); }

  constexpr auto operator<=>( const node_ref& ) const = default;

private:
  uint32_t data_{ 0 };
};

inline constexpr node_ref const0{ 0, false };
inline constexpr node_ref const1{ 0, true };

enum class node_kind : uint8_t
{
  constant,
  pi,
  and_gate
};

class aig_network
{
public:
  aig_network();

  node_ref get_constant( bool value ) const { return value ? const1 : const0; }
  node_ref create_pi();
  void create_po( node_ref f );

  /*! \brief Structurally hashed AND with constant and identity folding.

    Folds AND(x,x)=x, AND(x,!x)=0, AND(x,0)=0 and AND(x,1)=x, then returns the
    existing node for the canonical fanin pair if one exists.
  */
  node_ref create_and( node_ref a, node_ref b );

  /*! \brief AND without folding or hash lookup.

    Used by readers that must preserve the file's structure. The new node is
    registered in the hash table only if the pair is not already present.
  */
  node_ref create_and_raw( node_ref a, node_ref b );

  node_ref create_or( node_ref a, node_ref b ) { return !create_and( !a, !b ); }
  node_ref create_xor( node_ref a, node_ref b );
  node_ref create_mux( node_ref sel, node_ref then_ref, node_ref else_ref );

  std::optional<node_ref> lookup_and( node_ref a, node_ref b ) const;

  void replace_po( uint32_t index, node_ref f );
  void truncate_pos( uint32_t count );

  uint32_t size() const { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_pis() const { return static_cast<uint32_t>( pis_.size() ); }
  uint32_t num_pos() const { return static_cast<uint32_t>( pos_.size() ); }
  uint32_t num_ands() const { return size() - 1u - num_pis(); }

  node_kind kind( uint32_t n ) const { return nodes_[n].kind; }
  bool is_constant( uint32_t n ) const { return n == 0; }
  bool is_pi( uint32_t n ) const { return nodes_[n].kind == node_kind::pi; }
  bool is_and( uint32_t n ) const { return nodes_[n].kind == node_kind::and_gate; }

  node_ref fanin0( uint32_t n ) const { return nodes_[n].fanin[0]; }
  node_ref fanin1( uint32_t n ) const { return nodes_[n].fanin[1]; }

  /*! \brief Position of a PI node in the PI list. */
  uint32_t pi_position( uint32_t n ) const { return nodes_[n].pi_position; }

  std::span<const uint32_t> pis() const { return pis_; }
  std::span<const node_ref> pos() const { return pos_; }
  node_ref po_at( uint32_t i ) const { return pos_[i]; }

  template<typename Fn>
  void foreach_and( Fn&& fn ) const
  {
    for ( uint32_t n = 1; n < size(); ++n )
    {
      if ( nodes_[n].kind == node_kind::and_gate )
        fn( n );
    }
  }

private:
  struct node
  {
    node_ref fanin[2];
    node_kind kind{ node_kind::constant };
    uint32_t pi_position{ 0 };
  };

  static uint64_t key( node_ref a, node_ref b )
  {
    return ( static_cast<uint64_t>( a.literal() ) << 32 ) | b.literal();
  }

  node_ref append_and( node_ref a, node_ref b );

  std::vector<node> nodes_;
  std::vector<uint32_t> pis_;
  std::vector<node_ref> pos_;
  std::unordered_map<uint64_t, uint32_t> strash_;
};

/*! \brief Node-by-node structural identity (kinds, fanins, PI order, POs). */
bool structurally_equal( const aig_network& a, const aig_network& b );

/*! \brief Hash of the PO cones, invariant under fanin order and node numbering. */
uint64_t structural_signature( const aig_network& net );

/*! \brief Copy of `net` keeping only nodes in the transitive fanin of the POs. */
aig_network cleanup_dangling( const aig_network& net );

} // namespace aigc
