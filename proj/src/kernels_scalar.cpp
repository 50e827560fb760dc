#include <aigc/kernels.hpp>

namespace aigc::kernels::scalar
{

void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    dst[i] = ( a[i] ^ ma ) & ( b[i] ^ mb );
}

void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
    dst[i] = ( sel[i] & hi[i] ) | ( ~sel[i] & lo[i] );
}

std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n )
{
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( a[i] != ( b[i] ^ mb ) )
      return i;
  }
  return n;
}

} // namespace aigc::kernels::scalar
