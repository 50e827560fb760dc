/*!
  \file kernels.hpp
  \brief Word-parallel bit kernels used by simulation and netlist evaluation.

  Every kernel has a scalar reference implementation and, where the target
  supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
  picked once at runtime from the CPU features; `force_isa` overrides the
  choice so tests can compare variants against the reference.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace aigc::kernels
{

enum class isa
{
  scalar,
  avx2,
  neon
};

std::string_view isa_name( isa i );

/*! \brief True if the variant was compiled in and the CPU supports it. */
bool isa_available( isa i );

isa active_isa();

/*! \brief Select a variant; returns false (and changes nothing) if unavailable. */
bool force_isa( isa i );

/*! \brief dst[i] = (a[i] ^ ma) & (b[i] ^ mb), where m = all-ones when complemented. */
void and_words( std::span<uint64_t> dst, std::span<const uint64_t> a, bool a_compl,
                std::span<const uint64_t> b, bool b_compl );

/*! \brief dst[i] = (sel[i] & hi[i]) | (~sel[i] & lo[i]). */
void mux_words( std::span<uint64_t> dst, std::span<const uint64_t> sel,
                std::span<const uint64_t> hi, std::span<const uint64_t> lo );

/*! \brief Index of the first word where a[i] != (b[i] ^ mb), or a.size() if none. */
std::size_t first_difference( std::span<const uint64_t> a, std::span<const uint64_t> b, bool b_compl );

namespace scalar
{
void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n );
void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n );
std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n );
} // namespace scalar

namespace avx2
{
void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n );
void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n );
std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n );
} // namespace avx2

namespace neon
{
void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n );
void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n );
std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n );
} // namespace neon

} // namespace aigc::kernels
