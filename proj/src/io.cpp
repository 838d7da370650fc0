#include "remlab/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace remlab {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_digest: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::write(const std::string& path) const {
  nlohmann::json j;
  j["command"] = command;
  j["args"] = args;
  j["tool_version"] = tool_version;
  j["started"] = started;
  j["finished"] = finished;
  j["digests"] = digests;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("RunManifest::write: cannot open " + path);
  out << j.dump(2) << "\n";
}

RunManifest RunManifest::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("RunManifest::read: cannot open " + path);
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.args = j.at("args").get<std::map<std::string, std::string>>();
  m.tool_version = j.value("tool_version", "");
  m.started = j.value("started", "");
  m.finished = j.value("finished", "");
  m.digests = j.value("digests", std::map<std::string, std::string>{});
  return m;
}

void write_samples_csv(const std::vector<cplx>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_samples_csv: cannot open " + path);
  out << "re,im\n";
  char buf[80];
  for (const cplx& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.real(), s.imag());
    out << buf;
  }
}

void write_report_json(const FluctReport& report, const NormalizationPlan& plan,
                       const std::string& path) {
  nlohmann::json j;
  j["case_tag"] = to_string(plan.case_tag);
  j["beta"] = {plan.beta.sigma, plan.beta.tau};
  j["rho"] = plan.rho;
  j["n"] = plan.n;
  j["centering"] = plan.centering == Centering::TruncatedExact ? "truncated_exact" : "power";
  j["all_pass"] = report.all_pass();
  nlohmann::json gates = nlohmann::json::array();
  for (const GateResult& g : report.gates) {
    gates.push_back({{"name", g.name},
                     {"pass", g.pass},
                     {"statistic", g.statistic},
                     {"p_value", g.p_value}});
  }
  j["gates"] = gates;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_report_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace remlab
