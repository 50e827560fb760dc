#include <aigc/kernels.hpp>

#include <arm_neon.h>

namespace aigc::kernels::neon
{

void and_words( uint64_t* dst, const uint64_t* a, uint64_t ma, const uint64_t* b, uint64_t mb, std::size_t n )
{
  const uint64x2_t va_mask = vdupq_n_u64( ma );
  const uint64x2_t vb_mask = vdupq_n_u64( mb );
  std::size_t i = 0;
  for ( ; i + 2 <= n; i += 2 )
  {
    const uint64x2_t va = veorq_u64( vld1q_u64( a + i ), va_mask );
    const uint64x2_t vb = veorq_u64( vld1q_u64( b + i ), vb_mask );
    vst1q_u64( dst + i, vandq_u64( va, vb ) );
  }
  for ( ; i < n; ++i )
    dst[i] = ( a[i] ^ ma ) & ( b[i] ^ mb );
}

void mux_words( uint64_t* dst, const uint64_t* sel, const uint64_t* hi, const uint64_t* lo, std::size_t n )
{
  std::size_t i = 0;
  for ( ; i + 2 <= n; i += 2 )
    vst1q_u64( dst + i, vbslq_u64( vld1q_u64( sel + i ), vld1q_u64( hi + i ), vld1q_u64( lo + i ) ) );
  for ( ; i < n; ++i )
    dst[i] = ( sel[i] & hi[i] ) | ( ~sel[i] & lo[i] );
}

std::size_t first_difference( const uint64_t* a, const uint64_t* b, uint64_t mb, std::size_t n )
{
  const uint64x2_t vb_mask = vdupq_n_u64( mb );
  std::size_t i = 0;
  for ( ; i + 2 <= n; i += 2 )
  {
    const uint64x2_t diff = veorq_u64( vld1q_u64( a + i ), veorq_u64( vld1q_u64( b + i ), vb_mask ) );
    if ( ( vgetq_lane_u64( diff, 0 ) | vgetq_lane_u64( diff, 1 ) ) != 0 )
      return vgetq_lane_u64( diff, 0 ) != 0 ? i : i + 1;
  }
  for ( ; i < n; ++i )
  {
    if ( a[i] != ( b[i] ^ mb ) )
      return i;
  }
  return n;
}

} // namespace aigc::kernels::neon
