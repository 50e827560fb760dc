#include <aigc/kernels.hpp>

#include <immintrin.h>

namespace aigc::kernels::avx2
{

void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n )
{
  const __m256i va_mask = _mm256_set1_epi64x( static_cast<long long>( ma ) );
  const __m256i vb_mask = _mm256_set1_epi64x( static_cast<long long>( mb ) );
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
  {
    const __m256i va = _mm256_xor_si256( _mm256_loadu_si256( reinterpret_cast<const __m256i*>( a + i ) ), va_mask );
    const __m256i vb = _mm256_xor_si256( _mm256_loadu_si256( reinterpret_cast<const __m256i*>( b + i ) ), vb_mask );
    _mm256_storeu_si256( reinterpret_cast<__m256i*>( dst + i ), _mm256_and_si256( va, vb ) );
  }
  for ( ; i < n; ++i )
    dst[i] = ( a[i] ^ ma ) & ( b[i] ^ mb );
}

void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n )
{
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
  {
    const __m256i vs = _mm256_loadu_si256( reinterpret_cast<const __m256i*>( sel + i ) );
    const __m256i vh = _mm256_loadu_si256( reinterpret_cast<const __m256i*>( hi + i ) );
    const __m256i vl = _mm256_loadu_si256( reinterpret_cast<const __m256i*>( lo + i ) );
    /* andnot computes ~vs & vl */
    const __m256i r = _mm256_or_si256( _mm256_and_si256( vs, vh ), _mm256_andnot_si256( vs, vl ) );
    _mm256_storeu_si256( reinterpret_cast<__m256i*>( dst + i ), r );
  }
  for ( ; i < n; ++i )
    dst[i] = ( sel[i] & hi[i] ) | ( ~sel[i] & lo[i] );
}

std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n )
{
  const __m256i vb_mask = _mm256_set1_epi64x( static_cast<long long>( mb ) );
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
  {
    const __m256i va = _mm256_loadu_si256( reinterpret_cast<const __m256i*>( a + i ) );
    const __m256i vb = _mm256_xor_si256( _mm256_loadu_si256( reinterpret_cast<const __m256i*>( b + i ) ), vb_mask );
    const __m256i diff = _mm256_xor_si256( va, vb );
    if ( !_mm256_testz_si256( diff, diff ) )
    {
      for ( std::size_t j = i; j < i + 4; ++j )
      {
        if ( a[j] != ( b[j] ^ mb ) )
          return j;
      }
    }
  }
  for ( ; i < n; ++i )
  {
    if ( a[i] != ( b[i] ^ mb ) )
      return i;
  }
  return n;
}

} // namespace aigc::kernels::avx2
