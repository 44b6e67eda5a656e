#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
std::string g_cache_dir;

struct RunOutput {
  int exit_code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunOutput run(const std::string& args, const std::string& cache_env = "") {
  std::string out_file = g_cache_dir + "/out.txt", err_file = g_cache_dir + "/err.txt";
  std::string env = "BERNOULLI_CACHE=" + (cache_env.empty() ? g_cache_dir : cache_env);
  std::string cmd = env + " " + g_binary + " " + args + " > " + out_file + " 2> " + err_file;
  int status = std::system(cmd.c_str());
  RunOutput r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

}  // namespace

using json = nlohmann::json;

TEST_CASE("mahler subcommand: golden ratio enclosure, exit 0") {
  RunOutput r = run("mahler --poly \"-1,1,1\"");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["mahler"][0].get<double>() <= 1.618033988749895);
  CHECK(j["mahler"][1].get<double>() >= 1.618033988749894);
  CHECK(j["width"].get<double>() <= 1e-10);
}

TEST_CASE("separation guard: n = 13 for the golden case exits 1 and quotes the rule") {
  RunOutput r = run("separation --poly \"-1,1,1\" --root-in 0.6,0.7 --n 13");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("10 d log d") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("empty invocation and unknown flags exit 1 with usage") {
  RunOutput r = run("");
  CHECK(r.exit_code == 1);
  RunOutput r2 = run("mahler --poly \"-1,1,1\" --definitely-not-a-flag");
  CHECK(r2.exit_code == 1);
  CHECK(!r2.err.empty());
}

TEST_CASE("byte determinism and cache behaviour") {
  std::filesystem::remove_all(g_cache_dir + "/det");
  std::filesystem::create_directories(g_cache_dir + "/det");
  std::string cache = g_cache_dir + "/det";
  RunOutput first = run("entropy --poly \"-1,1,1\" --nmax 8 --seed 5", cache);
  RunOutput second = run("entropy --poly \"-1,1,1\" --nmax 8 --seed 5", cache);
  REQUIRE(first.exit_code == 0);
  CHECK(second.exit_code == first.exit_code);
  CHECK(second.out == first.out);  // byte-identical
  CHECK(second.err.find("cached: true") != std::string::npos);
  CHECK(first.err.find("cached: true") == std::string::npos);
  // uncached run agrees too
  RunOutput third = run("entropy --poly \"-1,1,1\" --nmax 8 --seed 5 --no-cache", cache);
  CHECK(third.out == first.out);
}

TEST_CASE("corrupt cache entries are recomputed") {
  std::filesystem::remove_all(g_cache_dir + "/corrupt");
  std::filesystem::create_directories(g_cache_dir + "/corrupt");
  std::string cache = g_cache_dir + "/corrupt";
  RunOutput first = run("mahler --poly \"-1,2\"", cache);
  REQUIRE(first.exit_code == 0);
  for (const auto& entry : std::filesystem::directory_iterator(cache)) {
    std::ofstream f(entry.path());
    f << "{not json";
  }
  RunOutput second = run("mahler --poly \"-1,2\"", cache);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("cached: true") == std::string::npos);
}

TEST_CASE("unwritable cache directory degrades with a warning") {
  RunOutput r = run("mahler --poly \"-1,2\"", "/proc/nonexistent/cache");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("cache disabled") != std::string::npos);
  json j = json::parse(r.out);
  CHECK(j["mahler"][0].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("exit code contract per subcommand") {
  // UNRESOLVED dimension verdict exits 3
  RunOutput dim = run("dim --poly \"-1,1,1\" --nmax 10");
  CHECK(dim.exit_code == 3);
  json j = json::parse(dim.out);
  CHECK(j["verdict"] == "UNRESOLVED");

  // certified dim = 1 exits 0
  RunOutput dim9 = run("dim --poly \"-9,10\" --nmax 8");
  CHECK(dim9.exit_code == 0);

  // counterexample exits 2
  RunOutput tr = run("transversal --series-class P --x0 0.71 --delta 0.01");
  CHECK(tr.exit_code == 2);
  json tj = json::parse(tr.out);
  CHECK(tj["status"] == "COUNTEREXAMPLE");
  CHECK(tj["witness"]["x"].get<double>() <= 0.71);

  // certified transversality exits 0
  RunOutput tc = run("transversal --series-class P --x0 0.45 --delta 0.1");
  CHECK(tc.exit_code == 0);

  // PASS separation exits 0
  RunOutput sep = run("separation --poly \"-1,1,1\" --root-in 0.6,0.7 --n 14 --samples 2");
  CHECK(sep.exit_code == 0);
}

TEST_CASE("csv emitters") {
  RunOutput r = run("entropy --poly \"-1,2\" --nmax 4 --csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("N,H_lo,H_hi,HN_lo,HN_hi", 0) == 0);
  RunOutput atlas = run("atlas --nmax 3 --csv");
  CHECK(atlas.exit_code == 0);
  CHECK(atlas.out.rfind("root_lo,root_hi,poly,degree", 0) == 0);
  RunOutput p = run("phi --a 1,2 --csv");
  CHECK(p.exit_code == 0);
  CHECK(p.out.rfind("a,lower,estimate", 0) == 0);
}

TEST_CASE("bits switch rescales entropy display only") {
  RunOutput nats = run("entropy --poly \"-1,2\" --nmax 3");
  RunOutput bits = run("entropy --poly \"-1,2\" --nmax 3 --bits");
  json jn = json::parse(nats.out), jb = json::parse(bits.out);
  double hn = jn["entries"][2]["H"][0].get<double>();
  double hb = jb["entries"][2]["H"][0].get<double>();
  CHECK(hb == doctest::Approx(hn / std::log(2.0)).epsilon(1e-12));
  CHECK(jb["units"] == "bits");
}

TEST_CASE("boxdim determinism with a fixed seed") {
  RunOutput a = run("boxdim --root-in 0.5,0.5 --n 20 --scale 8 --seed 42");
  RunOutput b = run("boxdim --root-in 0.5,0.5 --n 20 --scale 8 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(std::abs(j["estimate"].get<double>() - 1.0) < 0.02);
}

TEST_CASE("minval subcommand with a numeric lambda interval") {
  RunOutput r = run("minval --root-in 0.5,0.5 --n 8 --mode exhaustive");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["min"][0].get<double>() == doctest::Approx(1.0 / 256).epsilon(1e-12));
  RunOutput p = run("minval --root-in 0.5,0.5 --n 8 --mode pruned");
  json jp = json::parse(p.out);
  CHECK(jp["min"][0] == j["min"][0]);
  CHECK(jp["nodes"].get<std::uint64_t>() < j["nodes"].get<std::uint64_t>());
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (!a.empty() && a[0] != '-') g_binary = a;
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-bernoulli-binary>\n");
    return 1;
  }
  g_cache_dir = (std::filesystem::temp_directory_path() / "bernoulli-cli-test").string();
  std::filesystem::create_directories(g_cache_dir);
  return ctx.run();
}
