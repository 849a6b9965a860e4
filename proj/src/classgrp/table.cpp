#include <chrono>
#include <ctime>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "qck/classgrp.hpp"

namespace qck::classgrp {

namespace {

using json = nlohmann::json;

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json number(const BigInt& x) {
  if (arith::fits_int64(x)) return x.get_si();
  return x.get_str();
}

BigInt from_number(const json& j) { return j.is_string() ? BigInt(j.get<std::string>()) : BigInt(j.get<long>()); }

// p -> last cached row for this seed; malformed lines are skipped
std::map<std::int64_t, TableRow> read_cache(const std::string& path, std::uint64_t seed) {
  std::map<std::int64_t, TableRow> out;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    try {
      if (j.at("seed").get<std::uint64_t>() != seed) continue;
      TableRow r;
      r.p = j.at("p").get<std::int64_t>();
      r.h = from_number(j.at("h"));
      for (const auto& d : j.at("divisors")) r.divisors.push_back(from_number(d));
      r.certification = j.at("certification").get<std::string>();
      r.from_cache = true;
      out[r.p] = std::move(r);
    } catch (const std::exception&) {
      continue;
    }
  }
  return out;
}

void append_cache(const std::string& path, const TableRow& r, std::uint64_t seed) {
  json j;
  j["p"] = r.p;
  j["h"] = number(*r.h);
  j["divisors"] = json::array();
  for (const auto& d : r.divisors) j["divisors"].push_back(number(d));
  j["seed"] = seed;
  j["certification"] = r.certification;
  j["timestamp"] = utc_timestamp();
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot write cache file " + path);
  out << j.dump() << '\n';
}

}  // namespace

std::vector<TableRow> tabulate(const std::vector<std::int64_t>& primes, const ClassGroupConfig& config,
                               const std::string& cache_path, bool resume) {
  std::map<std::int64_t, TableRow> cached;
  if (resume && !cache_path.empty()) cached = read_cache(cache_path, config.seed);
  std::vector<TableRow> rows;
  for (std::int64_t p : primes) {
    if (auto it = cached.find(p); it != cached.end()) {
      rows.push_back(it->second);
      continue;
    }
    TableRow r;
    r.p = p;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto s = compute_class_group(p, config);
      r.h = s.h;
      r.divisors = s.elementary_divisors;
      r.certification = to_string(s.certification);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.h && !cache_path.empty()) append_cache(cache_path, r, config.seed);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace qck::classgrp
