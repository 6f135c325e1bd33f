#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qfreq/blowup.hpp"
#include "qfreq/families.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/hopf.hpp"
#include "qfreq/report.hpp"

namespace qfreq {

// Key order is fixed at insertion, so dumping the same value twice yields
// identical bytes.
using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of x ("%.17g"); NaN prints as "nan".
std::string fmt_g17(double x);

/// Writes content to path via a sibling temp file plus rename, so readers
/// never observe a partial file. Parent directories are created.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

Json profile_to_json(const RadialProfile& profile);
std::string profile_to_csv(const RadialProfile& profile);

/// Static log-log plot of H(r)/r against r: axes, decade ticks, one
/// polyline. Pure text output, no timestamps.
std::string profile_svg(const RadialProfile& profile);

Json hopf_to_json(const HopfPackage& pkg);

Json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

Json blowup_to_json(const BlowupReport& report);
std::string blowup_steps_csv(const BlowupReport& report);

Json scan_to_json(const ScanResult& result);
std::string scan_to_csv(const ScanResult& result);

/// Rebuilds the tabular (CSV) form of a previously written artifact from
/// its JSON, dispatching on the embedded "type" field. Artifacts without a
/// tabular form (hopf_package, field) are pretty-printed back as JSON.
/// Returns the new file extension paired with the content.
std::pair<std::string, std::string> reserialize(const Json& artifact);

}  // namespace qfreq
