#pragma once

#include <string>
#include <vector>

namespace qfreq {

/// One verified statement: a measured value against its bound. Slack is
/// oriented so that nonnegative means the bound holds with room to spare.
/// Informational rows carry no bound (NaN) and always pass.
struct CheckRow {
  std::string id;      // instance id, unique within a report
  std::string anchor;  // registered check anchor, see anchors::all()
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
  bool informational = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRow> rows;
  int grid_angular = 0;
  int grid_radial = 0;
  std::string tool_version;

  /// Throws parameter_error on an unregistered anchor.
  void add(std::string id, const std::string& anchor, double measured, double bound, double slack,
           bool pass);
  void add_info(std::string id, const std::string& anchor, double measured);

  bool all_pass() const;
  std::size_t failure_count() const;
};

/// Registry of check anchors. Every report row must reference one of these;
/// the README's check index documents the statement behind each. Tests
/// enforce that no anchor is orphaned in either direction.
namespace anchors {

inline constexpr const char* kFrequencyMonotone = "frequency.monotone";
inline constexpr const char* kFrequencyHolder = "frequency.holder_exponent";
inline constexpr const char* kHeightBoundLower = "height_bound.lower";
inline constexpr const char* kHeightBoundUpper = "height_bound.upper";
inline constexpr const char* kCompletionGradientIdentity = "completion.gradient_identity";
inline constexpr const char* kCompletionEnergyIdentity = "completion.energy_identity";
inline constexpr const char* kCompletionConformality = "completion.conformality";
inline constexpr const char* kHopfHolomorphy = "hopf.holomorphy";
inline constexpr const char* kHopfPointwiseBound = "hopf.pointwise_bound";
inline constexpr const char* kEnergyAugmentedRatio = "energy.augmented_ratio";
inline constexpr const char* kOscillationRadiusBound = "oscillation.radius_bound";
inline constexpr const char* kOscillationCenterGap = "oscillation.center_gap";
inline constexpr const char* kBlowupUnitHeight = "blowup.unit_height";
inline constexpr const char* kBlowupFrequencyInvariance = "blowup.frequency_invariance";
inline constexpr const char* kBlowupEnergyTrace = "blowup.energy_trace";
inline constexpr const char* kBlowupHeightFloor = "blowup.height_floor";
inline constexpr const char* kBlowupCenterOscillation = "blowup.center_oscillation";
inline constexpr const char* kScanFrequencyGap = "scan.frequency_gap";

const std::vector<std::string>& all();
bool known(const std::string& anchor);

}  // namespace anchors

}  // namespace qfreq
