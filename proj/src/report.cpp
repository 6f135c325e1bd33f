#include "qfreq/report.hpp"

#include <algorithm>
#include <limits>

#include "qfreq/errors.hpp"

namespace qfreq {

void VerificationReport::add(std::string id, const std::string& anchor, double measured,
                             double bound, double slack, bool pass) {
  if (!anchors::known(anchor)) throw parameter_error("unregistered check anchor: " + anchor);
  rows.push_back(CheckRow{std::move(id), anchor, measured, bound, slack, pass, false});
}

void VerificationReport::add_info(std::string id, const std::string& anchor, double measured) {
  if (!anchors::known(anchor)) throw parameter_error("unregistered check anchor: " + anchor);
  rows.push_back(CheckRow{std::move(id), anchor, measured,
                          std::numeric_limits<double>::quiet_NaN(), 0.0, true, true});
}

bool VerificationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::size_t VerificationReport::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

namespace anchors {

const std::vector<std::string>& all() {
  static const std::vector<std::string> list = {
      kFrequencyMonotone,
      kFrequencyHolder,
      kHeightBoundLower,
      kHeightBoundUpper,
      kCompletionGradientIdentity,
      kCompletionEnergyIdentity,
      kCompletionConformality,
      kHopfHolomorphy,
      kHopfPointwiseBound,
      kEnergyAugmentedRatio,
      kOscillationRadiusBound,
      kOscillationCenterGap,
      kBlowupUnitHeight,
      kBlowupFrequencyInvariance,
      kBlowupEnergyTrace,
      kBlowupHeightFloor,
      kBlowupCenterOscillation,
      kScanFrequencyGap,
  };
  return list;
}

bool known(const std::string& anchor) {
  const auto& list = all();
  return std::find(list.begin(), list.end(), anchor) != list.end();
}

}  // namespace anchors

}  // namespace qfreq
