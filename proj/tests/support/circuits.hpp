/*!
  \file circuits.hpp
  \brief Parametric benchmark circuits for tests and the corpus.
*/

#pragma once

#include <aigc/aig.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aigc::circuits
{

/*! \brief Left-deep conjunction of `n` inputs (n - 1 ANDs, depth n - 1). */
aig_network and_chain( uint32_t n );

/*! \brief Balanced conjunction of `n` inputs. */
aig_network balanced_and( uint32_t n );

/*! \brief Ripple-carry adder: inputs a[0..bits), b[0..bits); outputs sum and carry. */
aig_network ripple_adder( uint32_t bits );

/*! \brief Array multiplier of two `bits`-bit operands. */
aig_network multiplier( uint32_t bits );

/*! \brief 2^sel:1 multiplexer; select inputs first. */
aig_network mux_tree( uint32_t sel );

/*! \brief XOR of `n` inputs as a chain. */
aig_network parity( uint32_t n );

/*! \brief Unsigned comparator with outputs a < b and a == b. */
aig_network comparator( uint32_t bits );

/*! \brief One-hot decoder of `n` inputs. */
aig_network decoder( uint32_t n );

/*! \brief Priority encoder of `n` request lines: valid flag plus binary index. */
aig_network priority_encoder( uint32_t n );

/*! \brief Majority of 3 over overlapping input triples, OR-reduced in a chain. */
aig_network majority_chain( uint32_t n );

/*! \brief Small ALU: two `bits`-bit operands, 2 opcode bits (and, or, xor, add). */
aig_network alu( uint32_t bits );

/*! \brief Random AIG: fanins drawn from the previous `window` nodes with random
           complements; every fanout-free node becomes a PO. */
aig_network random_network( uint32_t pis, uint32_t ands, uint64_t seed, uint32_t window = 32 );

/*! \brief Random network with exactly `ands` live AND nodes. */
aig_network synthetic( uint32_t pis, uint32_t ands, uint64_t seed );

/*! \brief Named corpus of small circuits (at most 16 PIs each). */
std::vector<std::pair<std::string, aig_network>> corpus();

} // namespace aigc::circuits
