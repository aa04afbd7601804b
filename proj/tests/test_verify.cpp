#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "pgroups/verify.hpp"

using namespace pgroups;

namespace {

const CheckResult* find_result(const std::vector<CheckResult>& rs, const std::string& check,
                               const std::string& group) {
  for (const CheckResult& r : rs)
    if (r.check == check && r.group == group) return &r;
  return nullptr;
}

bool detail_mentions(const CheckResult& r, const std::string& needle) {
  return r.detail.find(needle) != std::string::npos;
}

std::string render(const std::vector<CheckResult>& rs) {
  std::ostringstream os;
  write_report(os, rs);
  return os.str();
}

std::vector<CorpusEntry> small_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(corpus_entry_from_group(cyclic_group(8)));
  out.push_back(corpus_entry_from_group(direct_product(cyclic_group(4), cyclic_group(4))));
  out.push_back(corpus_entry_from_group(cyclic_group(9)));
  out.push_back(corpus_entry_from_scheme(construct_free_pcentral(2, 2, 1)));
  out.push_back(corpus_entry_from_scheme(construct_free_pcentral(3, 2, 1)));
  out.push_back(corpus_entry_from_group(quaternion_group(8)));
  out.push_back(corpus_entry_from_group(modular_group(16)));
  out.push_back(corpus_entry_from_group(extraspecial_group(3)));
  return out;
}

}  // namespace

TEST_CASE("the default corpus covers abelian families, schemes, and controls") {
  std::vector<CorpusEntry> corpus = default_corpus();
  REQUIRE(corpus.size() == 23);
  std::set<std::string> ids;
  int schemes = 0;
  int non_p_central = 0;
  for (const CorpusEntry& e : corpus) {
    CHECK(ids.insert(e.id).second);
    REQUIRE(e.group != nullptr);
    CHECK(e.p >= 2);
    if (e.is_scheme) {
      ++schemes;
      REQUIRE(e.scheme != nullptr);
      CHECK(Int(e.group->order()) == e.scheme->order());
    } else if (!is_p_central(*e.group, e.p)) {
      ++non_p_central;
    }
  }
  CHECK(schemes == 5);
  CHECK(non_p_central >= 3);
}

TEST_CASE("the full suite passes on the default corpus with hypothesis-gated skips") {
  std::vector<CorpusEntry> corpus = default_corpus();
  std::vector<CheckResult> results = run_suite(corpus);
  REQUIRE(results.size() == corpus.size() * all_checks().size());
  CHECK_FALSE(any_failure(results));

  std::map<std::string, std::pair<int, int>> tally;  // check -> (pass, skipped)
  for (const CheckResult& r : results) {
    REQUIRE((r.status == "pass" || r.status == "skipped"));
    if (r.status == "pass")
      ++tally[r.check].first;
    else
      ++tally[r.check].second;
    if (r.status == "skipped") CHECK_FALSE(r.detail.empty());
    CHECK(r.duration_ms == 0);
  }
  CHECK(tally["C1"] == std::make_pair(23, 0));
  CHECK(tally["C2"] == std::make_pair(23, 0));
  CHECK(tally["C3"] == std::make_pair(5, 18));
  CHECK(tally["C4"] == std::make_pair(18, 5));
  CHECK(tally["C5"] == std::make_pair(18, 5));
  CHECK(tally["C6"] == std::make_pair(15, 8));
  CHECK(tally["C7"] == std::make_pair(18, 5));
  CHECK(tally["C8"] == std::make_pair(9, 14));
  CHECK(tally["C9"] == std::make_pair(5, 18));
  CHECK(tally["C10"] == std::make_pair(18, 5));
  CHECK(tally["C11"] == std::make_pair(23, 0));

  const CheckResult* r = find_result(results, "C3", "fpc(2,2,2)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "pass");

  r = find_result(results, "C7", "fpc(2,2,2)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "pass");
  CHECK(detail_mentions(*r, "exprank=1"));

  r = find_result(results, "C7", "fpc(3,2,2)");
  REQUIRE(r != nullptr);
  CHECK(detail_mentions(*r, "exprank=0"));

  r = find_result(results, "C4", "quaternion(8)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "skipped");
  CHECK(detail_mentions(*r, "requires a p-central group"));

  r = find_result(results, "C6", "fpc(2,2,2)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "skipped");  // order 1024 is past the multiplier cap

  r = find_result(results, "C6", "cyclic(4) x cyclic(4)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "pass");
  CHECK(detail_mentions(*r, "(4)"));

  r = find_result(results, "C8", "cyclic(9)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "skipped");
  CHECK(detail_mentions(*r, "specific to p = 2"));

  r = find_result(results, "C8", "modular(16)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "skipped");
  CHECK(detail_mentions(*r, "requires a 2-central group"));

  r = find_result(results, "C9", "fpc(2,2,2)");
  REQUIRE(r != nullptr);
  CHECK(r->status == "pass");
  CHECK(detail_mentions(*r, "families=4 trials=12 seed=20260823"));
  CHECK(detail_mentions(*r, "outer index j"));

  r = find_result(results, "C9", "fpc(3,2,2)");
  REQUIRE(r != nullptr);
  CHECK(r->detail == "families=2 trials=12 seed=20260823");
}

TEST_CASE("results come back sorted by check rank and then group id") {
  std::vector<CorpusEntry> corpus = small_corpus();
  std::vector<CheckResult> results = run_suite(corpus, {"C11", "C1", "C3"});
  REQUIRE(results.size() == corpus.size() * 3);
  auto rank = [](const std::string& c) {
    return std::find(all_checks().begin(), all_checks().end(), c) - all_checks().begin();
  };
  for (std::size_t i = 1; i < results.size(); ++i) {
    long long ra = rank(results[i - 1].check), rb = rank(results[i].check);
    CHECK(ra <= rb);
    if (ra == rb) CHECK(results[i - 1].group < results[i].group);
  }
  CHECK(results.front().check == "C1");
  CHECK(results.back().check == "C11");
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  std::vector<CorpusEntry> corpus = small_corpus();
  std::string one = render(run_suite(corpus, {}, 1));
  std::string again = render(run_suite(corpus, {}, 1));
  std::string four = render(run_suite(corpus, {}, 4));
  CHECK(one == again);
  CHECK(one == four);
  CHECK(std::count(one.begin(), one.end(), '\n') ==
        static_cast<long long>(corpus.size() * all_checks().size()));
}

TEST_CASE("a group that contradicts its scheme label is reported as a failure") {
  CorpusEntry bogus;
  bogus.id = "bogus";
  bogus.source = "test";
  bogus.p = 2;
  bogus.is_scheme = true;
  bogus.scheme = construct_free_pcentral(2, 2, 1);
  bogus.group = std::make_shared<const CayleyGroup>(quaternion_group(8));
  std::vector<CheckResult> results = run_suite({bogus}, {"C3"});
  REQUIRE(results.size() == 1);
  CHECK(results[0].status == "fail");
  CHECK(any_failure(results));
}

TEST_CASE("bad suite arguments are rejected") {
  std::vector<CorpusEntry> corpus;
  corpus.push_back(corpus_entry_from_group(cyclic_group(4)));
  CHECK_THROWS_AS(run_suite(corpus, {"C99"}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(corpus, {"c1"}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(corpus, {}, 0), std::invalid_argument);
}

TEST_CASE("report lines use a fixed key order and JSON escaping") {
  std::vector<CheckResult> rs{{"C1", "g\"x", "pass", "line\nbreak \\ quote \"", 0}};
  CHECK(render(rs) ==
        "{\"check\":\"C1\",\"group\":\"g\\\"x\",\"status\":\"pass\","
        "\"detail\":\"line\\u000abreak \\\\ quote \\\"\",\"duration_ms\":0}\n");
}

TEST_CASE("corpus directories hold group tables and scheme descriptors") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pgroups-verify-corpus";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "a_dihedral.pgt");
    write_group(f, dihedral_group(8));
  }
  {
    std::ofstream f(dir / "b_scheme.fpc");
    write_scheme(f, *construct_free_pcentral(2, 2, 1));
  }
  {
    std::ofstream f(dir / "c_mixed.pgt");
    write_group(f, direct_product(cyclic_group(2), cyclic_group(3)));
  }
  {
    std::ofstream f(dir / "notes.txt");
    f << "ignored\n";
  }

  std::vector<CorpusEntry> corpus = load_corpus_dir(dir.string());
  REQUIRE(corpus.size() == 3);
  CHECK(corpus[0].id == "a_dihedral.pgt");
  CHECK(corpus[1].id == "b_scheme.fpc");
  CHECK(corpus[2].id == "c_mixed.pgt");
  CHECK(corpus[0].p == 2);
  CHECK(corpus[1].is_scheme);
  REQUIRE(corpus[1].group != nullptr);
  CHECK(corpus[1].group->order() == 16);
  CHECK(corpus[2].p == 0);

  std::vector<CheckResult> results = run_suite(corpus, {"C1"});
  const CheckResult* mixed = find_result(results, "C1", "c_mixed.pgt");
  REQUIRE(mixed != nullptr);
  CHECK(mixed->status == "skipped");
  CHECK(detail_mentions(*mixed, "prime power"));
  const CheckResult* dih = find_result(results, "C1", "a_dihedral.pgt");
  REQUIRE(dih != nullptr);
  CHECK(dih->status == "pass");

  CHECK_THROWS_AS(load_corpus_dir((dir / "missing").string()), std::invalid_argument);
  fs::path empty = dir / "empty";
  fs::create_directories(empty);
  CHECK_THROWS_AS(load_corpus_dir(empty.string()), std::invalid_argument);
  fs::remove_all(dir);
}
