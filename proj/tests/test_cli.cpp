#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "lf/forest.hpp"
#include "lf/json_io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run lftool(const std::string& args) {
  const std::string cmd = std::string(LFTOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(LF_SAMPLES_DIR) + "/" + name; }

lf::json parse(const Run& r) { return lf::parse_json_text(r.out); }

TEST(Cli, EnumerateThree) {
  const auto r = lftool("forest enumerate --n 3 --check");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["count"].get<int>(), 4);
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(Cli, ValidateReportsViolations) {
  const auto r = lftool("forest validate --in " + sample("broken.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(parse(r)["valid"].get<bool>());
  EXPECT_EQ(lftool("forest validate --check --in " + sample("broken.json")).code, 1);
  EXPECT_EQ(lftool("forest validate --check --in " + sample("tree.json")).code, 0);
}

TEST(Cli, GenAndUnion) {
  const auto g = lftool("forest gen --check --spec " + sample("gen_spec.json"));
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(lf::forest_from_json(parse(g)).size(), 6 + 1 + 1);  // A_1 is a bare root
  const auto u = lftool("forest union --check --in " + sample("e2.json") + " --in " + sample("a2.json"));
  ASSERT_EQ(u.code, 0);
  EXPECT_EQ(lf::forest_from_json(parse(u)).size(), 16);
  EXPECT_EQ(lftool("forest prime --s 3 --j 1 --check").code, 0);
}

TEST(Cli, SolveVerdict) {
  const auto r = lftool("ef solve --m0 " + sample("e2.json") + " --m1 " + sample("a2.json") + " --rounds 2 --h 2 --check");
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["winner"].get<std::string>(), "A");
  EXPECT_TRUE(j.contains("winning_pick"));
}

TEST(Cli, PlayTraceLines) {
  const auto r = lftool("ef play --m0 " + sample("e2.json") + " --m1 " + sample("e2.json") +
                        " --n 1 --h 2 --prolonged --spoiler random --seed 5 --check");
  ASSERT_EQ(r.code, 0);
  std::vector<lf::json> lines;
  std::size_t start = 0;
  while (start < r.out.size()) {
    const auto end = r.out.find('\n', start);
    lines.push_back(lf::parse_json_text(r.out.substr(start, end - start)));
    start = end + 1;
  }
  ASSERT_EQ(lines.size(), 2u * 3u + 1u);  // k = n(h+1) = 3 rounds, two moves each
  EXPECT_EQ(lines[0]["mover"].get<std::string>(), "A");
  EXPECT_EQ(lines[1]["mover"].get<std::string>(), "E");
  EXPECT_EQ(lines.back()["verdict"].get<std::string>(), "E-wins");
}

TEST(Cli, PlayRejectsBrokenHypothesis) {
  EXPECT_EQ(lftool("ef play --m0 " + sample("e2.json") + " --m1 " + sample("a2.json") + " --n 1 --h 2").code, 1);
}

TEST(Cli, LogicRoundTrip) {
  const auto r = lftool("logic parse --check --formula 'all x . P[0](x) => ex y in succ[0](x) . true'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["qrank"].get<int>(), 2);
  const auto e = lftool("logic eval --check --in " + sample("tree.json") + " --formula 'ex y in succ[0](x) . true' --assign x=0");
  ASSERT_EQ(e.code, 0);
  EXPECT_TRUE(parse(e)["value"].get<bool>());
  EXPECT_EQ(lftool("logic axioms --h 2 --check").code, 0);
  EXPECT_EQ(lftool("logic translate --h 2 --check --formula @" + sample("sentence.txt")).code, 0);
}

TEST(Cli, Colors) {
  EXPECT_EQ(lftool("color run --check --in " + sample("tree.json") + " --k 2 --h 2").code, 0);
  EXPECT_EQ(lftool("color census --check --in " + sample("e2.json") + " --k 1 --h 1").code, 0);
  EXPECT_EQ(lftool("color fingerprint --check --in " + sample("e2.json") + " --tuple 0,3 --k 1 --h 2").code, 0);
  const auto y = lftool("color y --check --color '(0 [(1 [])*2])' --k 2 --h 1");
  ASSERT_EQ(y.code, 0);
  EXPECT_EQ(lf::forest_from_json(parse(y)).size(), 3);
}

TEST(Cli, PseudoCertificate) {
  const auto r = lftool("pseudo formula --certificate --h 2 --in " + sample("tree.json") + " --formula @" + sample("sentence.txt"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(parse(r)["certificate"]["passed"].get<bool>());
  EXPECT_EQ(lftool("pseudo witness --check --n 1 --h 2 --in " + sample("tree.json")).code, 0);
}

TEST(Cli, HardnessCommands) {
  EXPECT_EQ(lftool("hardness ea --kind A --k 3 --b 2 --check").code, 0);
  EXPECT_EQ(lftool("hardness phi --k 3 --level 1 --check").code, 0);
  EXPECT_EQ(lftool("hardness reduce --check --b 2 --in " + sample("predicate.json")).code, 0);
  EXPECT_EQ(lftool("hardness gadget --check --d 2 --b 1").code, 0);
}

TEST(Cli, DemoIsByteDeterministic) {
  const auto a = lftool("hardness demo --check --spec " + sample("random_demo.json") + " --seed 7");
  const auto b = lftool("hardness demo --check --spec " + sample("random_demo.json") + " --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto fixed = lftool("hardness demo --check --spec " + sample("demo.json"));
  ASSERT_EQ(fixed.code, 0);
  EXPECT_TRUE(parse(fixed)["verdict_holds"].get<bool>());
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "lftool_out_test.json";
  ASSERT_EQ(lftool("forest enumerate --n 2 --out " + path.string()).code, 0);
  EXPECT_EQ(lf::parse_json_text(lf::read_text_file(path.string()))["count"].get<int>(), 2);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(lftool("").code, 2);
  EXPECT_EQ(lftool("forest nope").code, 2);
  EXPECT_EQ(lftool("logic parse --formula 'ex x .'").code, 2);
  EXPECT_EQ(lftool("forest validate --in /nonexistent.json").code, 2);
  EXPECT_EQ(lftool("hardness ea --k 9").code, 3);
  EXPECT_EQ(lftool("forest enumerate --n 12").code, 3);
  EXPECT_EQ(lftool("hardness ea --k 0").code, 1);
}

TEST(Cli, SuiteOracle) {
  const auto r = lftool("suite oracle");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("\"passed\":false"), std::string::npos);
}

}  // namespace
