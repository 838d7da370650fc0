#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "remlab/fluct.hpp"
#include "remlab/types.hpp"

namespace remlab {

// FNV-1a 64 of a file's bytes, hex-encoded.
std::string file_digest(const std::string& path);

// Execution record: enough to re-run a command bit-identically and to verify
// its outputs.
struct RunManifest {
  std::string command;                       // subcommand name
  std::map<std::string, std::string> args;   // normalized parameter map
  std::string tool_version;
  std::string started;
  std::string finished;
  std::map<std::string, std::string> digests;  // file -> fnv1a64

  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);
};

std::string iso_timestamp();

void write_samples_csv(const std::vector<cplx>& samples, const std::string& path);
void write_report_json(const FluctReport& report, const NormalizationPlan& plan,
                       const std::string& path);

}  // namespace remlab
