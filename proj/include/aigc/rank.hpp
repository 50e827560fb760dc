/*!
  \file rank.hpp
  \brief Structural dissimilarity metrics and candidate ranking.

  Three dissimilarities compare a candidate against its representative cone:
  simulation fingerprints, AND-count disparity, and depth/fanout Pearson
  correlation. Their mean is combined with a quality gain as
  `total = alpha * s_hybrid + beta * q_obj`.
*/

#pragma once

#include <aigc/cone.hpp>
#include <aigc/mutate.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace aigc
{

struct score_record
{
  double s_sim{ 0.0 };
  double s_and{ 0.0 };
  double s_pearson{ 0.0 };
  double s_hybrid{ 0.0 };
  double q_obj{ 0.0 };
  double total{ 0.0 };
};

/*! \brief Fraction of candidate AND nodes whose simulation vector (or its
           complement) matches no AND node of the subject.

  Subject vectors are normalized so that the first pattern evaluates to 0.
  Throws std::invalid_argument on PI count mismatch or n_words == 0.
*/
double sim_dissimilarity( const aig_network& subj, const aig_network& cand, std::size_t n_words, uint64_t seed );

/*! \brief |A_s - A_c| / max(A_s, A_c, 1) over AND counts. */
double and_disparity( const aig_network& subj, const aig_network& cand );

struct pearson_result
{
  double score{ 0.0 };
  bool degenerate{ false };
};

/*! \brief 1 - |r| for two sequences truncated to their common length.

  Zero variance on either side gives |r| = 1 if the truncated sequences are
  equal and 0 otherwise. Fewer than two common elements is degenerate (score 0).
*/
pearson_result pearson_sequence_dissimilarity( std::span<const double> x, std::span<const double> y );

/*! \brief |r| of the truncated sequences under the same conventions. */
double pearson_abs_correlation( std::span<const double> x, std::span<const double> y );

/*! \brief 1 - (|r_depth| + |r_fanout|) / 2 over PI and AND nodes in index order. */
pearson_result pearson_dissimilarity( const aig_network& subj, const aig_network& cand );

/*! \brief Relative depth (delay) or size (area) gain of `cand` over `rc`, clamped to [-1, 1]. */
double quality_score( const aig_network& rc, const aig_network& cand, opt_mode mode );

struct rank_config
{
  opt_mode mode{ opt_mode::delay };
  double alpha{ 2.0 };
  double beta{ 3.0 };
  uint32_t topk{ 3 };
  std::size_t n_words{ 16 };
  uint64_t seed{ 0 };
};

struct ranked_variant
{
  candidate_variant variant;
  score_record score;
};

score_record score_candidate( const aig_network& rc, const candidate_variant& cand, const rank_config& cfg );

/*! \brief Scores every candidate and keeps the `topk` best.

  Order: descending total, then higher s_hybrid, smaller size, provenance
  order, input position.
*/
std::vector<ranked_variant> rank_candidates( const aig_network& rc, std::vector<candidate_variant> candidates,
                                             const rank_config& cfg );

} // namespace aigc
