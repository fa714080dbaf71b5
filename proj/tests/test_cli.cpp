#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entropylab/csv.hpp"
#include "entropylab/langspec.hpp"

using namespace entropylab;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " '" + std::string(ENTROPYLAB_CLI) + "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(ENTROPYLAB_DATA_DIR) + "/" + name; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(LangSpec, Examples) {
  auto d = parse_lang_spec("dyck:ab");
  EXPECT_EQ(d.name, "dyck");
  EXPECT_EQ(d.arg, "ab");
  auto l = build_language(d).finite();
  EXPECT_EQ(l.alphabet().names(), (std::vector<std::string>{"a", "b", "A", "B"}));

  auto p = parse_lang_spec("pad(dyck:a)");
  EXPECT_EQ(p.name, "pad");
  ASSERT_EQ(p.children.size(), 1u);
  EXPECT_EQ(p.children[0].str(), "dyck:a");
  EXPECT_TRUE(build_language(p).finite().contains(std::string_view("aAaaAA")));

  EXPECT_EQ(kind_of([] { parse_lang_spec("bogus:"); }), ErrorKind::UnknownLanguage);
}

TEST(LangSpec, SyntaxErrors) {
  for (const char* bad : {"", "dyck", "dyck:", "pad(dyck:a", "pad()", "combine(dyck:a,dyck:a)",
                          "combine(dyck:a,dyck:a,sep=)", "surj:x=0", "surj:y=1", "tprime:k=0", "prime:7",
                          "dyck:ab)", "rev(dyck:a,dyck:a)"}) {
    EXPECT_EQ(kind_of([&] { parse_lang_spec(bad); }), ErrorKind::SpecSyntax) << bad;
  }
}

TEST(LangSpec, Normalization) {
  EXPECT_EQ(parse_lang_spec("surj:x=1.5").str(), "surj:x=3/2");
  EXPECT_EQ(parse_lang_spec("surj:x=6/4").str(), "surj:x=3/2");
  EXPECT_EQ(parse_lang_spec("tprime:k=02").str(), "tprime:k=2");
}

TEST(LangSpec, RoundTrip) {
  for (const char* text : {"dyck:ab", "pad(dyck:a)", "rev(dpali:ab)", "combine(dyck:a,pali:ab,sep=#)",
                           "enc(dyck:ab,code.json)", "surj:x=3/2", "uinf", "prime", "tprime:k=3", "sat",
                           "pad(rev(combine(all:ab,empty:ab,sep=$)))", "dfa(x.json)", "pda(y.json)"}) {
    auto spec = parse_lang_spec(text);
    EXPECT_EQ(parse_lang_spec(spec.str()), spec) << text;
  }
}

TEST(LangSpec, KindMismatch) {
  EXPECT_EQ(kind_of([] { build_language("prime").finite(); }), ErrorKind::AlphabetMismatch);
  EXPECT_EQ(kind_of([] { build_language("dyck:a").unary(); }), ErrorKind::AlphabetMismatch);
  EXPECT_TRUE(build_language("uinf").unary().contains(Natural(32)));
}

TEST(LangSpec, RepresentativeProbes) {
  auto reps = representative_probes(parse_lang_spec("dyck:ab"), 2);
  ASSERT_TRUE(reps.has_value());
  EXPECT_EQ(reps->size(), 8u);
  EXPECT_FALSE(representative_probes(parse_lang_spec("pali:ab"), 2).has_value());
  auto unary = representative_probes_unary(parse_lang_spec("uinf"), 1);
  ASSERT_TRUE(unary.has_value());
  EXPECT_EQ(unary->size(), 4u);
}

TEST(Csv, Format) {
  EXPECT_EQ(format_row(make_row(2, 4, false)), "2,4,false,1.000000");
  EXPECT_EQ(format_row(make_row(3, 2, true)), "3,2,true,0.333333");
  EXPECT_EQ(kind_of([] { format_csv({}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(lines_of(format_csv({make_row(1, 1, true)})), (std::vector<std::string>{"n,index,certified,h_n", "1,1,true,0.000000"}));
}

TEST(Csv, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "entropylab_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "rows.csv").string();
  emit_csv({make_row(2, 4, false)}, path);
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "n,index,certified,h_n\n2,4,false,1.000000\n");
  EXPECT_EQ(kind_of([] { emit_csv({make_row(1, 1, true)}, "/nonexistent/dir/out.csv"); }), ErrorKind::BadFile);
  std::filesystem::remove_all(dir);
}

TEST(Cli, EntropyWritesCsv) {
  const auto out = (std::filesystem::temp_directory_path() / "entropylab_cli_d.csv").string();
  auto r = run_cli("entropy --lang dyck:ab --n 4 --probes 6 --out '" + out + "'");
  EXPECT_EQ(r.code, 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  auto lines = lines_of(ss.str());
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "n,index,certified,h_n");
  EXPECT_EQ(lines[3], "3,16,false,1.333333");
  std::filesystem::remove(out);
}

TEST(Cli, EntropyDfaIsCertified) {
  auto r = run_cli("entropy --lang 'dfa(" + data("even_a.json") + ")' --n 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,2,true,0.333333"), std::string::npos) << r.out;
}

TEST(Cli, PdaRun) {
  auto r = run_cli("pda run --file '" + data("dpali.json") + "' --input 'ab#ba'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out).at(0), "accept");
  r = run_cli("pda run --file '" + data("dpali.json") + "' --input 'ab'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out).at(0), "reject");
  r = run_cli("pda run --file '" + data("dpali.json") + "' --input 'abc'");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, PrimeMertens) {
  auto r = run_cli("prime mertens --k 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4/15 ≈ 0.266667\n");
}

TEST(Cli, PrimeSubcommands) {
  auto r = run_cli("prime s --n 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,s_n\n1,2\n2,3\n3,5\n");
  r = run_cli("prime bound --nprime 1 --k 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound=24 ok=true"), std::string::npos) << r.out;
  r = run_cli("prime verify --n 4 --kmax 10000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("n=4 k_max=10000 missing=0"), std::string::npos) << r.out;
}

TEST(Cli, OneCounter) {
  auto r = run_cli("oc analyze --file '" + data("onecounter_l.json") + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("params C=2 M=1 K={1}"), std::string::npos) << r.out;
  r = run_cli("oc check --file '" + data("onecounter_l.json") + "' --n 4 --samples 50");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("violations=0"), std::string::npos) << r.out;
}

TEST(Cli, Member) {
  EXPECT_EQ(run_cli("member --lang prime --word 7").out, "member\n");
  EXPECT_EQ(run_cli("member --lang dpali:ab --word 'ab#ab'").out, "non-member\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 1);
  EXPECT_EQ(run_cli("entropy").code, 1);
  EXPECT_EQ(run_cli("entropy --lang dyck:ab --n x").code, 1);
  EXPECT_EQ(run_cli("member --lang bogus: --word a").code, 2);
  EXPECT_EQ(run_cli("entropy --lang 'dyck:ab' --n 6 --probes 12 --budget 1000").code, 3);
  EXPECT_EQ(run_cli("entropy --lang dyck:ab --n 3 --probes 5", "ENTROPYLAB_BUDGET=10").code, 3);
  EXPECT_EQ(run_cli("pda run --file /nonexistent.json --input a").code, 1);
}
