#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <thread>

#include <qlift/forms.hpp>
#include <qlift/lmfdb.hpp>

using namespace qlift;

namespace {

struct EnvGuard {
  std::string name;
  std::optional<std::string> old;
  EnvGuard(std::string n, const std::optional<std::string>& v)
      : name(std::move(n)), old(env(name.c_str())) {
    if (v)
      setenv(name.c_str(), v->c_str(), 1);
    else
      unsetenv(name.c_str());
  }
  ~EnvGuard() {
    if (old)
      setenv(name.c_str(), old->c_str(), 1);
    else
      unsetenv(name.c_str());
  }
};

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("qlift-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// a stand-in for the newform API on localhost
class FakeApi {
 public:
  FakeApi() {
    srv_.Get("/api/mf_newforms/", [](const httplib::Request& req, httplib::Response& res) {
      std::string label = req.get_param_value("label");
      if (label == "11.2.a.a") {
        res.set_content(R"({"data":[{"traces":[0,1,-2,-1,2,1,2,-2,0,-2,-2],"dim":1,)"
                        R"("weight":2,"level":11,"label":"11.2.a.a"}],"next":null})",
                        "application/json");
      } else if (label == "3.6.a.a") {
        res.set_content("not json", "text/plain");
      } else if (label == "23.2.a.a") {
        res.set_content(R"({"data":[{"label":"23.2.a.a","dim":2,"traces":[0,2,-2]}]})",
                        "application/json");
      } else {
        res.set_content(R"({"data":[]})", "application/json");
      }
    });
    port_ = srv_.bind_to_any_port("127.0.0.1");
    th_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
  }
  ~FakeApi() {
    srv_.stop();
    th_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server srv_;
  int port_ = 0;
  std::thread th_;
};

}  // namespace

TEST(Lmfdb, LabelParsing) {
  EXPECT_EQ(parse_label("6.12.a.a"), (std::pair<long, long>{6, 12}));
  EXPECT_THROW(parse_label("6.12.a"), ParseError);
  EXPECT_THROW(parse_label("x.12.a.a"), ParseError);
  EXPECT_THROW(parse_label("6.12.1.a"), ParseError);
}

TEST(Lmfdb, FixturesOffline) {
  auto a = fetch("6.12.a.a", 5);
  EXPECT_EQ(a.a, (std::vector<FieldElem>{1L, -32L, -243L, 1024L, 5766L}));
  EXPECT_EQ(a.source, RecordSource::fixture);
  EXPECT_EQ(a.level, 6);
  EXPECT_EQ(a.weight, 12);
  auto b = fetch("2.20.a.a", 5);
  EXPECT_EQ(b.a, (std::vector<FieldElem>{1L, -512L, -13092L, 262144L, 6546750L}));
  auto c = fetch("1.12.a.a", 3);
  EXPECT_EQ(c.a, (std::vector<FieldElem>{1L, -24L, 252L}));
}

TEST(Lmfdb, CountBeyondCache) {
  EXPECT_THROW(fetch("1.12.a.a", 101), PrecisionError);
  auto r = fetch("1.12.a.a", 10);
  EXPECT_THROW(r.coeff(11), PrecisionError);
  EXPECT_THROW(fetch("5.4.a.a", 3), CacheError);
}

TEST(Lmfdb, CompareDelta) {
  auto rec = fetch("1.12.a.a", 100);
  Series D = delta_series(24 * 101);
  EXPECT_TRUE(compare(rec, D, 100, 12).passed());
  EXPECT_THROW(compare(rec, D, 100, 10), DomainError);
  EXPECT_THROW(compare(rec, delta_series(24 * 50), 100, 12), PrecisionError);
  EXPECT_THROW(compare(fetch("1.12.a.a", 20), D, 30, 12), PrecisionError);
  Series bad = D + Series::monomial(24 * 7, FieldElem(1L), D.prec());
  auto r = compare(rec, bad, 100, 12);
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_EQ(r.mismatch, Index(24 * 7));
}

TEST(Lmfdb, RecordFormatRoundTrip) {
  NewformRecord r;
  r.label = "23.2.a.a";
  r.level = 23;
  r.weight = 2;
  r.a = {FieldElem(1L), FieldElem(Rational(-1, 2), Rational(1, 2), 5), FieldElem(-1L)};
  NewformRecord s = parse_record(format_record(r));
  EXPECT_EQ(r, s);
  EXPECT_THROW(parse_record("1.12.a.a 12 1 3\n1\n-24\n"), ParseError);
  EXPECT_THROW(parse_record("1.12.a.a 12 1 1\n2\n"), ParseError);
  EXPECT_THROW(parse_record("garbage"), ParseError);
}

TEST(Lmfdb, NetworkFetchPersistsAndReloads) {
  FakeApi api;
  auto dir = temp_dir("cache");
  EnvGuard base("LMFDB_BASE_URL", api.url());
  EnvGuard cache("QLIFT_CACHE_DIR", dir.string());
  EXPECT_THROW(fetch("11.2.a.a", 5), CacheError);
  auto net = fetch("11.2.a.a", 10, true);
  EXPECT_EQ(net.source, RecordSource::network);
  EXPECT_FALSE(net.fetched_at.empty());
  EXPECT_EQ(net.a[1], FieldElem(-2L));
  EXPECT_TRUE(std::filesystem::exists(dir / "11.2.a.a.txt"));
  auto off = fetch("11.2.a.a", 10);
  EXPECT_EQ(off.source, RecordSource::fixture);
  EXPECT_EQ(off, net);
  std::filesystem::remove_all(dir);
}

TEST(Lmfdb, NetworkFetchWithoutCacheDir) {
  FakeApi api;
  EnvGuard base("LMFDB_BASE_URL", api.url());
  EnvGuard cache("QLIFT_CACHE_DIR", std::nullopt);
  auto net = fetch("11.2.a.a", 3, true);
  EXPECT_EQ(net.source, RecordSource::network);
  EXPECT_THROW(cache_store(net), CacheError);
}

TEST(Lmfdb, NetworkErrorsAreDistinguished) {
  FakeApi api;
  auto dir = temp_dir("errs");
  EnvGuard cache("QLIFT_CACHE_DIR", dir.string());
  {
    EnvGuard base("LMFDB_BASE_URL", api.url());
    EXPECT_THROW(fetch("3.6.a.a", 3, true), ParseError);
    EXPECT_THROW(fetch("7.4.a.b", 3, true), UnknownLabel);
    EXPECT_THROW(fetch("23.2.a.a", 2, true), ParseError);
  }
  {
    EnvGuard base("LMFDB_BASE_URL", "http://127.0.0.1:1");
    EXPECT_THROW(fetch("7.4.a.a", 3, true), NetworkError);
  }
  std::filesystem::remove_all(dir);
}

TEST(Lmfdb, PayloadParsing) {
  auto r = parse_api_payload("11.2.a.a", R"({"data":[{"traces":[1,-2,-1],"level":11,"weight":2}]})");
  EXPECT_EQ(r.a.size(), 3u);
  auto s = parse_api_payload("11.2.a.a", R"({"data":[{"weight":2,"traces":[0,1,-2,-1],"level":11}]})");
  EXPECT_EQ(r.a, s.a);
  EXPECT_THROW(parse_api_payload("11.2.a.a", R"({"data":[{"level":11}]})"), ParseError);
  EXPECT_THROW(parse_api_payload("11.2.a.a", R"({"rows":[]})"), ParseError);
}
