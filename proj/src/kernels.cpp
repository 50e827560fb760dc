#include <aigc/kernels.hpp>

#include <cassert>

namespace aigc::kernels
{

namespace
{

struct dispatch_table
{
  isa id;
  void ( *and_words )( uint64_t*, const uint64_t*, uint64_t, const uint64_t*, uint64_t, std::size_t );
  void ( *mux_words )( uint64_t*, const uint64_t*, const uint64_t*, const uint64_t*, std::size_t );
  std::size_t ( *first_difference )( const uint64_t*, const uint64_t*, uint64_t, std::size_t );
};

constexpr dispatch_table scalar_table{ isa::scalar, &scalar::and_words, &scalar::mux_words, &scalar::first_difference };

#if defined( AIGC_HAVE_AVX2 )
constexpr dispatch_table avx2_table{ isa::avx2, &avx2::and_words, &avx2::mux_words, &avx2::first_difference };
#endif
#if defined( AIGC_HAVE_NEON )
constexpr dispatch_table neon_table{ isa::neon, &neon::and_words, &neon::mux_words, &neon::first_difference };
#endif

const dispatch_table* table_for( isa i )
{
  switch ( i )
  {
  case isa::scalar:
    return &scalar_table;
  case isa::avx2:
#if defined( AIGC_HAVE_AVX2 )
    if ( __builtin_cpu_supports( "avx2" ) )
      return &avx2_table;
#endif
    return nullptr;
  case isa::neon:
#if defined( AIGC_HAVE_NEON )
    return &neon_table;
#else
    return nullptr;
#endif
  }
  return nullptr;
}

const dispatch_table* detect()
{
  if ( auto* t = table_for( isa::avx2 ) )
    return t;
  if ( auto* t = table_for( isa::neon ) )
    return t;
  return &scalar_table;
}

const dispatch_table*& current()
{
  static const dispatch_table* table = detect();
  return table;
}

constexpr uint64_t mask( bool c ) { return c ? ~uint64_t{ 0 } : uint64_t{ 0 }; }

} // namespace

std::string_view isa_name( isa i )
{
  switch ( i )
  {
  case isa::scalar:
    return "scalar";
  case isa::avx2:
    return "avx2";
  case isa::neon:
    return "neon";
  }
  return "unknown";
}

bool isa_available( isa i ) { return table_for( i ) != nullptr; }

isa active_isa() { return current()->id; }

bool force_isa( isa i )
{
  auto* t = table_for( i );
  if ( t == nullptr )
    return false;
  current() = t;
  return true;
}

void and_words( std::span<uint64_t> dst, std::span<const uint64_t> a, bool a_compl,
                std::span<const uint64_t> b, bool b_compl )
{
  assert( a.size() == dst.size() && b.size() == dst.size() );
  current()->and_words( dst.data(), a.data(), mask( a_compl ), b.data(), mask( b_compl ), dst.size() );
}

void mux_words( std::span<uint64_t> dst, std::span<const uint64_t> sel,
                std::span<const uint64_t> hi, std::span<const uint64_t> lo )
{
  assert( sel.size() == dst.size() && hi.size() == dst.size() && lo.size() == dst.size() );
  current()->mux_words( dst.data(), sel.data(), hi.data(), lo.data(), dst.size() );
}

std::size_t first_difference( std::span<const uint64_t> a, std::span<const uint64_t> b, bool b_compl )
{
  assert( a.size() == b.size() );
  return current()->first_difference( a.data(), b.data(), mask( b_compl ), a.size() );
}

} // namespace aigc::kernels
