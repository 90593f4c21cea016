#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "report.hpp"

#ifndef QLIFT_FIXTURE_DIR
#define QLIFT_FIXTURE_DIR ""
#endif

namespace qlift {

struct NetworkError : Error {
  using Error::Error;
};

struct UnknownLabel : Error {
  using Error::Error;
};

struct CacheError : Error {
  using Error::Error;
};

enum class RecordSource { fixture, network };

struct NewformRecord {
  std::string label;
  long level = 0;
  long weight = 0;
  std::vector<FieldElem> a;  // a(1..count)
  RecordSource source = RecordSource::fixture;
  std::string fetched_at;

  std::size_t count() const { return a.size(); }

  const FieldElem& coeff(std::size_t n) const {
    if (n < 1 || n > a.size())
      throw PrecisionError(label + ": coefficient " + std::to_string(n) + " beyond the " +
                           std::to_string(a.size()) + " recorded");
    return a[n - 1];
  }

  bool operator==(const NewformRecord& o) const {
    return label == o.label && level == o.level && weight == o.weight && a == o.a;
  }
};

// "N.k.a.x"
inline std::pair<long, long> parse_label(const std::string& label) {
  std::istringstream in(label);
  std::string lvl, wt, orbit, name;
  if (!std::getline(in, lvl, '.') || !std::getline(in, wt, '.') || !std::getline(in, orbit, '.') ||
      !std::getline(in, name) || name.empty())
    throw ParseError("malformed newform label '" + label + "'", 0);
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 1) throw ParseError("malformed newform label '" + label + "'", 0);
    return v;
  };
  for (char c : orbit + name)
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw ParseError("malformed newform label '" + label + "'", 0);
  return {num(lvl), num(wt)};
}

inline std::string format_record(const NewformRecord& r) {
  std::ostringstream out;
  out << r.label << ' ' << r.weight << ' ' << r.level << ' ' << r.a.size() << '\n';
  for (auto& c : r.a) {
    if (c.is_rational())
      out << c.a().get_str() << '\n';
    else
      out << c.a().get_str() << ' ' << c.b().get_str() << ' ' << c.disc() << '\n';
  }
  return out.str();
}

inline NewformRecord parse_record(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty newform record", 0);
  std::istringstream hs(header);
  NewformRecord r;
  std::size_t count = 0;
  if (!(hs >> r.label >> r.weight >> r.level >> count))
    throw ParseError("bad record header '" + header + "'", 0);
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b;
    long d = 0;
    ls >> a;
    try {
      if (ls >> b >> d)
        r.a.emplace_back(parse_rational(a), parse_rational(b), d);
      else
        r.a.emplace_back(parse_rational(a));
    } catch (const ParseError&) {
      throw ParseError("bad coefficient on line " + std::to_string(lineno), 0);
    }
  }
  if (r.a.size() != count)
    throw ParseError("record lists " + std::to_string(r.a.size()) + " coefficients, header says " +
                         std::to_string(count),
                     0);
  if (!r.a.empty() && !(r.a[0] == FieldElem(1L))) throw ParseError("record not normalized", 0);
  return r;
}

inline std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

inline std::vector<std::filesystem::path> cache_dirs() {
  std::vector<std::filesystem::path> dirs;
  if (auto c = env("QLIFT_CACHE_DIR")) dirs.emplace_back(*c);
  if (*QLIFT_FIXTURE_DIR) dirs.emplace_back(QLIFT_FIXTURE_DIR);
  return dirs;
}

inline std::optional<NewformRecord> cache_lookup(const std::string& label) {
  for (auto& d : cache_dirs()) {
    auto p = d / (label + ".txt");
    std::ifstream in(p);
    if (!in) continue;
    std::stringstream ss;
    ss << in.rdbuf();
    auto r = parse_record(ss.str());
    if (r.label != label) throw CacheError(p.string() + " holds '" + r.label + "'");
    r.source = RecordSource::fixture;
    return r;
  }
  return std::nullopt;
}

inline void cache_store(const NewformRecord& r) {
  auto dir = env("QLIFT_CACHE_DIR");
  if (!dir) throw CacheError("QLIFT_CACHE_DIR is not set; nowhere to persist " + r.label);
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  auto p = std::filesystem::path(*dir) / (r.label + ".txt");
  std::ofstream out(p);
  if (!out) throw CacheError("cannot write " + p.string());
  out << format_record(r);
}

// coefficients from a JSON payload of the newform API
inline NewformRecord parse_api_payload(const std::string& label, const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("API payload is not JSON: ") + e.what(), 0);
  }
  if (!j.contains("data") || !j["data"].is_array()) throw ParseError("API payload lacks data", 0);
  if (j["data"].empty()) throw UnknownLabel("LMFDB has no newform " + label);
  const auto& row = j["data"][0];
  if (!row.contains("traces") || !row["traces"].is_array())
    throw ParseError("API payload lacks traces", 0);
  NewformRecord r;
  r.label = label;
  std::tie(r.level, r.weight) = parse_label(label);
  if (row.contains("level")) r.level = row["level"].get<long>();
  if (row.contains("weight")) r.weight = row["weight"].get<long>();
  if (row.contains("dim") && row["dim"].get<long>() != 1)
    throw ParseError(label + " is not a rational newform", 0);
  std::vector<FieldElem> a;
  for (auto& v : row["traces"]) {
    if (v.is_number_integer())
      a.emplace_back(Integer(v.get<long>()));
    else if (v.is_string())
      a.emplace_back(Integer(v.get<std::string>()));
    else
      throw ParseError("non-integer trace", 0);
  }
  // the trace list is indexed from 0 when it begins with a(0) = 0
  if (!a.empty() && a[0].is_zero()) a.erase(a.begin());
  r.a = std::move(a);
  r.source = RecordSource::network;
  return r;
}

inline std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

inline NewformRecord fetch_network(const std::string& label) {
  static std::mutex mu;
  static std::chrono::steady_clock::time_point last{};
  std::lock_guard<std::mutex> lock(mu);
  auto wait = last + std::chrono::seconds(1) - std::chrono::steady_clock::now();
  if (wait.count() > 0) std::this_thread::sleep_for(wait);
  std::string base = env("LMFDB_BASE_URL").value_or("https://www.lmfdb.org");
  std::string path = "/api/mf_newforms/?label=" + label + "&_format=json&_fields=label,level,weight,dim,traces";
  httplib::Result res;
  try {
    httplib::Client cli(base);
    cli.set_follow_location(true);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    res = cli.Get(path);
  } catch (const std::exception& e) {
    throw NetworkError(std::string("cannot reach ") + base + ": " + e.what());
  }
  last = std::chrono::steady_clock::now();
  if (!res) throw NetworkError("request to " + base + " failed: " + httplib::to_string(res.error()));
  if (res->status == 404) throw UnknownLabel("LMFDB has no newform " + label);
  if (res->status != 200) throw NetworkError("HTTP " + std::to_string(res->status) + " from " + base);
  auto r = parse_api_payload(label, res->body);
  r.fetched_at = now_utc();
  return r;
}

// cache first; the network only when allowed
inline NewformRecord fetch(const std::string& label, std::size_t count, bool allow_network = false) {
  parse_label(label);
  auto r = cache_lookup(label);
  if (!r || r->count() < count) {
    if (!allow_network) {
      if (r)
        throw PrecisionError(label + ": " + std::to_string(count) + " coefficients requested, " +
                             std::to_string(r->count()) + " cached");
      throw CacheError("no cached record for " + label + " and network use is off");
    }
    r = fetch_network(label);
    if (env("QLIFT_CACHE_DIR")) cache_store(*r);
  }
  if (r->count() < count)
    throw PrecisionError(label + ": " + std::to_string(count) + " coefficients requested, " +
                         std::to_string(r->count()) + " available");
  r->a.resize(count);
  return *r;
}

// exact equality of a(1..through) with the integer-grid series f of the given weight
inline CheckReport compare(const NewformRecord& rec, const Series& f, std::size_t through,
                           long weight) {
  if (weight != rec.weight)
    throw DomainError("weight " + std::to_string(weight) + " does not match " + rec.label +
                      " (weight " + std::to_string(rec.weight) + ")");
  if (through > rec.count())
    throw PrecisionError("compare through " + std::to_string(through) + " beyond the " +
                         std::to_string(rec.count()) + " recorded coefficients");
  if (24 * static_cast<Index>(through) >= f.prec())
    throw PrecisionError("series precision " + prec_str(f.prec()) + " below coefficient " +
                         std::to_string(through));
  std::vector<Series::Term> terms;
  for (std::size_t n = 1; n <= through; ++n) terms.emplace_back(24 * n, rec.a[n - 1]);
  Series ref = Series::from_terms(std::move(terms), 24 * (through + 1));
  auto rep = compare_report("lmfdb:" + rec.label, "through " + std::to_string(through),
                            f.truncated(24 * (through + 1)), ref);
  return rep;
}

// the callback shape used by the example checks
inline auto lmfdb_checker(bool allow_network = false) {
  return [allow_network](const std::string& label, const Series& f, std::size_t through,
                         long weight) {
    return compare(fetch(label, through, allow_network), f, through, weight);
  };
}

}  // namespace qlift
