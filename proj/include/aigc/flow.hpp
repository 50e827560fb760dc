/*!
  \file flow.hpp
  \brief End-to-end choice-network flow, reporting and benchmarking.

  select -> mutate -> rank -> build/validate -> map (with and without
  choices) -> verify. All randomness derives from `flow_config::seed`, so
  two runs with the same configuration produce identical results; only the
  wall-clock stage timings differ.
*/

#pragma once

#include <aigc/aig.hpp>
#include <aigc/choice.hpp>
#include <aigc/cone.hpp>
#include <aigc/egraph.hpp>
#include <aigc/mapper.hpp>
#include <aigc/mutate.hpp>
#include <aigc/rank.hpp>
#include <aigc/verify.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigc
{

enum class verify_mode
{
  automatic,
  exhaustive,
  random,
  off
};

std::string_view verify_mode_name( verify_mode m );

struct flow_config
{
  opt_mode mode{ opt_mode::delay };
  uint32_t k{ 6 };
  uint32_t cut_limit{ 8 };
  uint32_t rounds{ 2 };
  std::vector<uint32_t> thresholds{ 800, 85, 30, 20, 15, 10 };
  uint32_t fanout_limit{ 3 };
  double alpha{ 2.0 };
  double beta{ 3.0 };
  uint32_t topk{ 3 };
  uint32_t candidates{ 10 };
  std::size_t nwords{ 16 };
  uint64_t seed{ 0 };
  verify_mode verify{ verify_mode::automatic };
  uint32_t jobs{ 1 };
  saturation_limits limits{};
};

class flow_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Throws `flow_error` on out-of-range values. */
void validate( const flow_config& cfg );

struct cone_record
{
  cone rc;
  uint32_t rc_size{ 0 };
  uint32_t rc_depth{ 0 };
  uint32_t generated{ 0 };
  uint32_t admitted{ 0 };
  uint32_t rejected{ 0 };
  uint32_t saturation_iterations{ 0 };
  stop_reason saturation_stop{ stop_reason::saturated };
  std::vector<ranked_variant> ranked;
};

/*! Wall-clock milliseconds per stage; `total` is the sum of the four stages. */
struct stage_timings
{
  double cone_selection{ 0.0 };
  double cc_generation{ 0.0 };
  double filtering{ 0.0 };
  double mapping{ 0.0 };
  double total{ 0.0 };
};

struct flow_result
{
  aig_network subject;
  std::vector<cone_record> cones;
  /*! threshold -> cones selected at it */
  std::map<uint32_t, uint32_t, std::greater<>> per_threshold;
  uint32_t low_fanout_cones{ 0 };
  choice_network merged;
  choice_network choices;
  uint32_t choices_before_filter{ 0 };
  validation_report validation;
  class_summary classes;
  mapping_result mapped_without;
  mapping_result mapped_with;
  std::optional<cec_result> verify_without;
  std::optional<cec_result> verify_with;
  stage_timings timings;

  /*! \brief False on a verification counterexample or an invalid choice network. */
  bool ok() const;
};

flow_result run_flow( const aig_network& subject, const flow_config& cfg );

/*! \brief Structured `key: value` report with a stable key order; contains no timings. */
std::string format_report( const flow_result& res, const flow_config& cfg, std::string_view input_name );

/*! \brief Stage breakdown as `key: value` lines (milliseconds). */
std::string format_timings( const stage_timings& t );

/*! \brief Reads `.aag`/`.aig` (by header) or `.blif` (by extension). */
aig_network read_network( const std::filesystem::path& path );

struct bench_row
{
  std::string name;
  bool ok{ false };
  std::string error;
  uint32_t pis{ 0 };
  uint32_t pos{ 0 };
  uint32_t ands{ 0 };
  uint32_t depth_without{ 0 };
  uint32_t depth_with{ 0 };
  uint32_t luts_without{ 0 };
  uint32_t luts_with{ 0 };
  uint32_t classes{ 0 };
  uint32_t choices{ 0 };
  double runtime_ms{ 0.0 };
};

/*! \brief Runs the flow on every `.aag`/`.aig` file of `dir` (sorted by name).
           Failures are recorded in the row and the run continues. */
std::vector<bench_row> run_bench( const std::filesystem::path& dir, const flow_config& cfg );

/*! \brief Percentage reduction of `with` relative to `without` (0 if both are 0). */
double improvement( double without, double with );

/*! \brief Geometric mean of max(x, 1). */
double geomean( const std::vector<double>& xs );

/*! \brief Tab-separated table with one row per circuit plus `geomean` and `impr%` rows. */
std::string format_bench( const std::vector<bench_row>& rows, bool with_runtime = true );

} // namespace aigc
