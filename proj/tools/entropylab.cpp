#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "entropylab/automaton_io.hpp"
#include "entropylab/csv.hpp"
#include "entropylab/langspec.hpp"
#include "entropylab/primes.hpp"

namespace el = entropylab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kBudget = 3 };

el::QueryBudget budget_from(std::uint64_t flag) {
  el::QueryBudget b;
  if (const char* env = std::getenv("ENTROPYLAB_BUDGET")) {
    try {
      b.max_queries = std::stoull(env);
    } catch (const std::exception&) {
      throw el::Error(el::ErrorKind::InvalidArgument, "ENTROPYLAB_BUDGET must be a positive integer");
    }
  }
  if (flag > 0) b.max_queries = flag;
  if (b.max_queries == 0) throw el::Error(el::ErrorKind::InvalidArgument, "budget must be positive");
  return b;
}

std::string natural_string(const el::Natural& n) { return n.str(); }

std::string value_string(const el::OneCounterEps& oc, const el::OcValue& v) {
  if (v.state == oc.diverged()) return "(p_inf,inf)";
  return "(" + oc.state_name(v.state) + "," + std::to_string(v.counter) + ")";
}

std::string config_string(const el::MultiStackPda& pda, const el::PdaConfig& c) {
  std::string out = "(" + (c.state == pda.sink() ? std::string("sink") : pda.states[c.state]);
  for (std::size_t i = 0; i < c.stacks.size(); ++i) {
    const auto s = pda.stacks[i].format(c.stacks[i]);
    out += "," + (s.empty() ? std::string("ε") : s);
  }
  return out + ")";
}

struct Options {
  std::string lang, lang2, file, code, out, input, word, probes, sep = "#";
  std::size_t n = 0, explore = 0, samples = 200, k = 0, nprime = 0, enc_extra = 5;
  std::uint64_t kmax = 0, seed = 0, budget = 0;
};

// --probes: empty (default policy), a number M (exhaustive up to M) or "rep".
el::ProbeSet finite_probes(const el::LangSpec& spec, const std::string& probes, std::size_t n) {
  if (probes.empty()) return el::ExhaustiveUpTo{n + 2};
  if (probes == "rep") {
    auto rep = el::representative_probes(spec, n);
    if (!rep) throw el::Error(el::ErrorKind::InvalidArgument, "no representative probe family for " + spec.str());
    return *rep;
  }
  return el::ExhaustiveUpTo{std::stoull(probes)};
}

std::vector<el::Natural> unary_probes(const el::LangSpec& spec, const std::string& probes, std::size_t n) {
  if (probes.empty()) return el::unary_range(10'000);
  if (probes == "rep") {
    auto rep = el::representative_probes_unary(spec, n);
    if (!rep) throw el::Error(el::ErrorKind::InvalidArgument, "no representative probe family for " + spec.str());
    return *rep;
  }
  return el::unary_range(std::stoull(probes));
}

int cmd_entropy(const Options& o) {
  const auto spec = el::parse_lang_spec(o.lang);
  const auto built = el::build_language(spec);
  const auto budget = budget_from(o.budget);
  std::vector<el::EntropyRow> rows;
  if (built.dfa && o.probes.empty()) {
    rows = el::entropy_sequence_dfa(*built.dfa, o.n);
  } else if (built.is_unary()) {
    rows = el::entropy_sequence_unary(
        built.unary(), o.n, [&](std::size_t n) { return unary_probes(spec, o.probes, n); }, budget);
  } else {
    rows = el::entropy_sequence(
        built.finite(), o.n, [&](std::size_t n) { return finite_probes(spec, o.probes, n); }, budget);
  }
  std::cout << "# " << spec.str() << ": h_n sequence (limsup proxy)\n" << el::format_csv(rows);
  if (!o.out.empty()) el::emit_csv(rows, o.out);
  return kOk;
}

int cmd_classes(const Options& o) {
  const auto spec = el::parse_lang_spec(o.lang);
  const auto built = el::build_language(spec);
  const auto budget = budget_from(o.budget);
  if (built.is_unary()) {
    const auto table = el::theta_index_unary(built.unary(), o.n, unary_probes(spec, o.probes, o.n), budget);
    std::cout << "# n=" << o.n << " classes=" << table.index() << " certified=false\n";
    for (const auto& e : table.entries) {
      std::cout << natural_string(e.representative) << '\t' << e.probe_count << '\t' << e.signature.bits() << '\n';
    }
    return kOk;
  }
  const auto& lang = built.finite();
  const auto table = built.dfa && o.probes.empty() ? el::dfa_theta_index(*built.dfa, o.n)
                                                   : el::theta_index(lang, o.n, finite_probes(spec, o.probes, o.n), budget);
  std::cout << "# n=" << o.n << " classes=" << table.index() << " certified=" << (table.certified ? "true" : "false")
            << '\n';
  for (const auto& e : table.entries) {
    const auto rep = lang.alphabet().format(e.representative);
    std::cout << (rep.empty() ? "ε" : rep) << '\t' << e.probe_count << '\t' << e.signature.bits() << '\n';
  }
  return kOk;
}

int cmd_member(const Options& o) {
  const auto built = el::build_language(o.lang);
  bool member;
  if (built.is_unary()) {
    el::Natural n;
    try {
      n = el::Natural(o.word);
    } catch (const std::exception&) {
      throw el::Error(el::ErrorKind::InvalidArgument, "unary word must be a decimal natural");
    }
    member = built.unary().contains(n);
  } else {
    const auto& lang = built.finite();
    member = lang.contains(lang.alphabet().parse(o.word));
  }
  std::cout << (member ? "member" : "non-member") << '\n';
  return kOk;
}

int cmd_pda_run(const Options& o) {
  const auto pda = el::load_automaton_as<el::MultiStackPda>(o.file);
  const auto r = el::pda_run(pda, pda.input.parse(o.input));
  std::cout << (r.accepted ? "accept" : "reject") << '\n' << "config " << config_string(pda, r.final_config) << '\n';
  return kOk;
}

int cmd_pda_quotient(const Options& o) {
  const auto pda = el::load_automaton_as<el::MultiStackPda>(o.file);
  const auto explore = o.explore ? o.explore : 2 * o.n + 2;
  const auto r = el::lambda_index(pda, o.n, explore);
  const auto t = el::truncation_check(pda, o.n, explore);
  std::cout << "n=" << o.n << " explore=" << explore << " count=" << r.count << " bound=" << r.bound
            << " reachable=" << r.reachable << " truncated=" << r.truncated
            << " within_bound=" << (r.bound >= r.count ? "yes" : "no") << '\n';
  std::cout << "truncation groups=" << t.groups << " violations=" << t.violations << '\n';
  return t.violations == 0 && r.bound >= r.count ? kOk : kInvalid;
}

int cmd_oc_analyze(const Options& o) {
  const auto oc = el::load_automaton_as<el::OneCounterEps>(o.file);
  const auto params = el::oc_params(oc);
  for (const auto& b : params.closures) {
    std::cout << "q=" << oc.state_name(b.state) << " a=" << oc.input.name(b.input) << " ";
    if (const auto* t = std::get_if<el::AffineTail>(&b.tail)) {
      std::cout << "affine C=" << t->C << " m=" << t->m << " target=" << oc.state_name(t->target);
    } else if (const auto* t = std::get_if<el::PeriodicTail>(&b.tail)) {
      std::cout << "periodic C=" << t->C << " k=" << t->k << " table=[";
      for (std::size_t r = 0; r < t->table.size(); ++r) std::cout << (r ? " " : "") << value_string(oc, t->table[r]);
      std::cout << "]";
    } else {
      std::cout << "divergent C=" << b.threshold();
    }
    if (!b.exceptional.empty()) {
      std::cout << " below=[";
      for (std::size_t c = 0; c < b.exceptional.size(); ++c) {
        std::cout << (c ? " " : "") << c << ":" << value_string(oc, b.exceptional[c]);
      }
      std::cout << "]";
    }
    std::cout << '\n';
  }
  std::cout << "params C=" << params.C << " M=" << params.M << " K={";
  bool first = true;
  for (auto k : params.K) {
    std::cout << (first ? "" : ",") << k;
    first = false;
  }
  std::cout << "}\n";
  return kOk;
}

int cmd_oc_check(const Options& o) {
  const auto oc = el::load_automaton_as<el::OneCounterEps>(o.file);
  const auto r = el::oc_lambda_check(oc, o.n, o.samples, o.seed);
  std::cout << "n=" << r.n << " samples=" << r.samples << " counters>" << r.floor
            << " violations=" << r.violations.size() << '\n';
  for (const auto& v : r.violations) {
    std::cout << "violation q=" << oc.state_name(v.state) << " c=" << v.c << " c'=" << v.c2
              << " witness=" << oc.input.format(v.witness) << '\n';
  }
  return r.violations.empty() ? kOk : kInvalid;
}

int cmd_prime_s(const Options& o) {
  std::cout << "n,s_n\n";
  for (std::size_t n = 1; n <= o.n; ++n) std::cout << n << ',' << el::count_plausible(n) << '\n';
  return kOk;
}

int cmd_prime_verify(const Options& o) {
  const auto reports = el::verify_occurrence_conjecture_upto(o.n, o.kmax);
  bool all = true;
  for (const auto& r : reports) {
    std::cout << "n=" << r.n << " k_max=" << o.kmax << " missing=" << r.missing.size() << '\n';
    all = all && r.missing.empty();
  }
  if (!all) std::cout << "# missing means not found up to k_max, not a refutation\n";
  return kOk;
}

int cmd_prime_mertens(const Options& o) {
  const auto r = el::mertens_product(o.k);
  std::cout << r << " ≈ " << std::fixed << std::setprecision(6) << static_cast<double>(r) << '\n';
  return kOk;
}

int cmd_prime_bound(const Options& o) {
  el::PlausibleLimits limits;
  limits.max_n = 32;
  const auto r = el::prime_bound_check(o.nprime, o.k, limits);
  std::cout << "n=" << r.n << " s_n=" << r.s_n << " bound=" << r.bound << " ok=" << (r.ok ? "true" : "false") << '\n';
  return r.ok ? kOk : kInvalid;
}

int cmd_encode_check(const Options& o) {
  const auto spec = el::parse_lang_spec(o.lang);
  const auto built = el::build_language(spec);
  const auto code = el::load_prefix_code(o.code);
  const auto enc = el::encode_image(built.finite(), code);
  const auto budget = budget_from(o.budget);
  const std::size_t extra = o.probes.empty() ? 2 : std::stoull(o.probes);
  bool all = true;
  for (std::size_t n = 1; n <= o.n; ++n) {
    const auto ind = built.dfa ? el::dfa_theta_index(*built.dfa, n).index()
                               : el::theta_index(built.finite(), n, el::ExhaustiveUpTo{n + extra}, budget).index();
    const auto ind_enc = el::theta_index(enc, 2 * n, el::ExhaustiveUpTo{2 * n + o.enc_extra}, budget).index();
    const bool lower = ind_enc >= ind;
    const bool upper = ind_enc <= code.pre.size() * ind + 1;
    all = all && lower && upper;
    std::cout << "n=" << n << " ind=" << ind << " ind_enc(2n)=" << ind_enc << " pre=" << code.pre.size()
              << " lower=" << (lower ? "ok" : "FAIL") << " upper=" << (upper ? "ok" : "FAIL") << '\n';
  }
  return all ? kOk : kInvalid;
}

std::size_t shortest_member(const el::Language& lang, std::size_t max_len) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& w : el::enumerate_words_exact(lang.alphabet().size(), len)) {
      if (lang.contains(w)) return len;
    }
  }
  throw el::Error(el::ErrorKind::InvalidArgument, "no member of length <= " + std::to_string(max_len));
}

int cmd_combine_check(const Options& o) {
  const auto b1 = el::build_language(o.lang);
  const auto b2 = el::build_language(o.lang2);
  const auto joined = el::combine(b1.finite(), b2.finite(), o.sep);
  const auto budget = budget_from(o.budget);
  const auto v = shortest_member(b2.finite(), 16);
  shortest_member(b1.finite(), 16);
  const std::size_t extra = o.probes.empty() ? 2 : std::stoull(o.probes);
  auto ind = [&](const el::BuiltLanguage& b, std::size_t n) {
    return b.dfa ? el::dfa_theta_index(*b.dfa, n).index()
                 : el::theta_index(b.finite(), n, el::ExhaustiveUpTo{n + extra}, budget).index();
  };
  bool all = true;
  for (std::size_t n = v + 1; n <= o.n; ++n) {
    const auto i1 = ind(b1, n - v - 1);
    const auto i2 = ind(b2, n);
    const auto ij = el::theta_index(joined, n, el::ExhaustiveUpTo{n + extra}, budget).index();
    const auto k = static_cast<long long>(ij) - static_cast<long long>(i1 + i2);
    const bool ok = k == 0 || k == 1;
    all = all && ok;
    std::cout << "n=" << n << " |v'|=" << v << " ind(L1#L2)=" << ij << " ind1(n-|v'|-1)=" << i1 << " ind2(n)=" << i2
              << " k=" << k << (ok ? " ok" : " FAIL") << '\n';
  }
  return all ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropylab: Myhill-Nerode indices and entropy sequences of formal languages"};
  app.require_subcommand(1);
  Options o;

  auto* entropy = app.add_subcommand("entropy", "h_n = log2(ind Theta_n)/n for n = 1..N");
  entropy->add_option("--lang", o.lang, "language spec")->required();
  entropy->add_option("--n", o.n, "largest horizon")->required()->check(CLI::PositiveNumber);
  entropy->add_option("--probes", o.probes, "max probe length M, or 'rep'");
  entropy->add_option("--out", o.out, "CSV output path");
  entropy->add_option("--budget", o.budget, "membership query budget");

  auto* classes = app.add_subcommand("classes", "representatives and signatures of Theta_n classes");
  classes->add_option("--lang", o.lang, "language spec")->required();
  classes->add_option("--n", o.n, "horizon")->required();
  classes->add_option("--probes", o.probes, "max probe length M, or 'rep'");
  classes->add_option("--budget", o.budget, "membership query budget");

  auto* member = app.add_subcommand("member", "membership of a single word");
  member->add_option("--lang", o.lang, "language spec")->required();
  member->add_option("--word", o.word, "word (decimal natural for unary languages)")->required();

  auto* pda = app.add_subcommand("pda", "k-stack PDA tools");
  pda->require_subcommand(1);
  auto* pda_run = pda->add_subcommand("run", "run a word");
  pda_run->add_option("--file", o.file, "automaton file")->required()->check(CLI::ExistingFile);
  pda_run->add_option("--input", o.input, "input word")->required();
  auto* pda_quot = pda->add_subcommand("quotient", "Lambda_n index of truncated configurations");
  pda_quot->add_option("--file", o.file, "automaton file")->required()->check(CLI::ExistingFile);
  pda_quot->add_option("--n", o.n, "horizon")->required();
  pda_quot->add_option("--explore", o.explore, "input length explored (default 2n+2)");

  auto* oc = app.add_subcommand("oc", "1-counter automata with epsilon moves");
  oc->require_subcommand(1);
  auto* oc_an = oc->add_subcommand("analyze", "closure table and parameters");
  oc_an->add_option("--file", o.file, "automaton file")->required()->check(CLI::ExistingFile);
  auto* oc_ck = oc->add_subcommand("check", "sample the residue property");
  oc_ck->add_option("--file", o.file, "automaton file")->required()->check(CLI::ExistingFile);
  oc_ck->add_option("--n", o.n, "horizon")->required();
  oc_ck->add_option("--samples", o.samples, "sample count");
  oc_ck->add_option("--seed", o.seed, "random seed");

  auto* prime = app.add_subcommand("prime", "plausible prime sequences");
  prime->require_subcommand(1);
  auto* prime_s = prime->add_subcommand("s", "s_n table");
  prime_s->add_option("--n", o.n, "largest n")->required();
  auto* prime_v = prime->add_subcommand("verify", "search every plausible sequence in prime windows");
  prime_v->add_option("--n", o.n, "largest length")->required();
  prime_v->add_option("--kmax", o.kmax, "largest window start")->required();
  auto* prime_m = prime->add_subcommand("mertens", "product of (p-1)/p over the first k primes");
  prime_m->add_option("--k", o.k, "number of primes")->required()->check(CLI::PositiveNumber);
  auto* prime_b = prime->add_subcommand("bound", "compare s_n with the product bound");
  prime_b->add_option("--nprime", o.nprime, "n' with n = n' * p_1 * ... * p_k")->required()->check(CLI::PositiveNumber);
  prime_b->add_option("--k", o.k, "number of primes")->required()->check(CLI::PositiveNumber);

  auto* encode = app.add_subcommand("encode", "prefix-code encodings");
  encode->require_subcommand(1);
  auto* enc_ck = encode->add_subcommand("check", "index inequalities for enc(L)");
  enc_ck->add_option("--lang", o.lang, "language spec")->required();
  enc_ck->add_option("--code", o.code, "prefix code file")->required()->check(CLI::ExistingFile);
  enc_ck->add_option("--n", o.n, "largest horizon")->required();
  enc_ck->add_option("--probes", o.probes, "extra probe length for L (default 2)");
  enc_ck->add_option("--enc-probes", o.enc_extra, "extra probe length for enc(L) (default 5)");
  enc_ck->add_option("--budget", o.budget, "membership query budget");

  auto* comb = app.add_subcommand("combine", "#-combination");
  comb->require_subcommand(1);
  auto* comb_ck = comb->add_subcommand("check", "index identity for L1#L2");
  comb_ck->add_option("--l1", o.lang, "first language spec")->required();
  comb_ck->add_option("--l2", o.lang2, "second language spec")->required();
  comb_ck->add_option("--n", o.n, "largest horizon")->required();
  comb_ck->add_option("--sep", o.sep, "separator symbol");
  comb_ck->add_option("--probes", o.probes, "extra probe length (default 2)");
  comb_ck->add_option("--budget", o.budget, "membership query budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*entropy) return cmd_entropy(o);
    if (*classes) return cmd_classes(o);
    if (*member) return cmd_member(o);
    if (*pda_run) return cmd_pda_run(o);
    if (*pda_quot) return cmd_pda_quotient(o);
    if (*oc_an) return cmd_oc_analyze(o);
    if (*oc_ck) return cmd_oc_check(o);
    if (*prime_s) return cmd_prime_s(o);
    if (*prime_v) return cmd_prime_verify(o);
    if (*prime_m) return cmd_prime_mertens(o);
    if (*prime_b) return cmd_prime_bound(o);
    if (*enc_ck) return cmd_encode_check(o);
    if (*comb_ck) return cmd_combine_check(o);
  } catch (const el::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_budget() ? kBudget : kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
