#include <doctest.h>

#include <random>
#include <sstream>

#include "lceval/deptree.hpp"
#include "lceval/errors.hpp"
#include "lceval/uas.hpp"
#include "test_helpers.hpp"

using namespace lceval;
using namespace lceval::deptree;

namespace {

// Worked example: "John made the pie in the fridge".
GoldTree john_made_the_pie() {
  GoldTree t;
  t.sentence_id = "john";
  t.nodes = {
      {1, "John", 2, "PROPN"}, {2, "made", 0, "VERB"}, {3, "the", 4, "DET"},
      {4, "pie", 2, "NOUN"},   {5, "in", 7, "ADP"},    {6, "the", 7, "DET"},
      {7, "fridge", 4, "NOUN"},
  };
  return t;
}

GoldTree random_tree(std::mt19937_64& rng, int n) {
  // random attachment: node i heads to a random earlier node or the root
  GoldTree t;
  t.sentence_id = "random";
  for (int i = 1; i <= n; ++i) {
    DepNode node;
    node.index = i;
    node.form = testutil::random_word(rng, 1, 8);
    node.pos = std::string(kUdPosTags[rng() % kUdPosTags.size()]);
    node.head = i == 1 ? 0 : static_cast<int>(rng() % (i - 1)) + 1;
    t.nodes.push_back(node);
  }
  // move the root somewhere random: re-root by swapping heads
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("deptree");

TEST_CASE("parse: two-line sentence") {
  const std::string input =
      "1\tHan\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
      "2\tsover\t_\tVERB\t_\t_\t0\troot\t_\t_\n";
  auto trees = parse_conllu(input);
  REQUIRE(trees.size() == 1);
  REQUIRE(trees[0].nodes.size() == 2);
  CHECK(trees[0].nodes[0].form == "Han");
  CHECK(trees[0].nodes[0].head == 2);
  CHECK(trees[0].root_index() == 2);
  CHECK(trees[0].nodes[1].pos == "VERB");
}

TEST_CASE("parse: multiword range lines are skipped") {
  const std::string input =
      "# sent_id = mwt\n"
      "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tde\t_\tADP\t_\t_\t2\tcase\t_\t_\n"
      "2\tel\t_\tDET\t_\t_\t0\troot\t_\t_\n";
  auto trees = parse_conllu(input);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].nodes.size() == 2);
  CHECK(trees[0].sentence_id == "mwt");
}

TEST_CASE("parse: cycle raises NonTree with a line number") {
  // nodes 2 and 3 head each other, node 1 is a valid root
  const std::string input =
      "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t3\tdep\t_\t_\n"
      "3\tc\t_\tX\t_\t_\t2\tdep\t_\t_\n";
  try {
    parse_conllu(input);
    FAIL("expected NonTree");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonTree);
    CHECK(e.line() == 1);
  }

  // and a sentence with no root at all is NonTree too
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
                               "2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n"),
                  Error);
}

TEST_CASE("parse: wrong column count raises MalformedLine") {
  try {
    parse_conllu("1\tHan\t2\n");
    FAIL("expected MalformedLine");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedLine);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("parse: multiple roots and out-of-range heads are NonTree") {
  CHECK_THROWS_AS(
      parse_conllu("1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
                   "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n"),
      Error);
  CHECK_THROWS_AS(parse_conllu("1\ta\t_\tX\t_\t_\t9\tdep\t_\t_\n"), Error);
}

TEST_CASE("parse+serialize: lossless on the ten fixture gold trees") {
  for (const std::string& id : testutil::corpus_ids()) {
    const std::string original = testutil::read_file(
        testutil::data_dir() / "corpus" / (id + ".conllu"));
    auto trees = parse_conllu(original);
    REQUIRE(trees.size() == 1);
    auto reparsed = parse_conllu(serialize_conllu(trees[0]));
    REQUIRE(reparsed.size() == 1);
    REQUIRE(reparsed[0].nodes.size() == trees[0].nodes.size());
    CHECK(reparsed[0].sentence_id == trees[0].sentence_id);
    for (std::size_t i = 0; i < trees[0].nodes.size(); ++i) {
      CHECK(reparsed[0].nodes[i].index == trees[0].nodes[i].index);
      CHECK(reparsed[0].nodes[i].form == trees[0].nodes[i].form);
      CHECK(reparsed[0].nodes[i].pos == trees[0].nodes[i].pos);
      CHECK(reparsed[0].nodes[i].head == trees[0].nodes[i].head);
    }
  }
}

TEST_CASE("parse+serialize: round trip on random trees") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    GoldTree t = random_tree(rng, 1 + static_cast<int>(rng() % 20));
    auto back = parse_conllu(serialize_conllu(t));
    REQUIRE(back.size() == 1);
    REQUIRE(back[0].nodes.size() == t.nodes.size());
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      CHECK(back[0].nodes[i].head == t.nodes[i].head);
      CHECK(back[0].nodes[i].form == t.nodes[i].form);
    }
  }
}

TEST_CASE("add: worked example under both conventions") {
  GoldTree t = john_made_the_pie();
  AddResult root_index = compute_add(t, AddConvention::root_index);
  CHECK(root_index.sum_distance == 12);
  CHECK(root_index.word_count == 7);
  CHECK(root_index.add == doctest::Approx(12.0 / 7.0).epsilon(1e-9));

  AddResult root_zero = compute_add(t, AddConvention::root_zero);
  CHECK(root_zero.sum_distance == 10);
  CHECK(root_zero.add == doctest::Approx(10.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("add: two-node tree") {
  GoldTree t;
  t.nodes = {{1, "Han", 2, "PRON"}, {2, "sover", 0, "VERB"}};
  CHECK(compute_add(t, AddConvention::root_zero).add ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("add: empty tree raises") {
  GoldTree t;
  CHECK_THROWS_AS(compute_add(t, AddConvention::root_zero), Error);
}

TEST_CASE("add: predicted tree with out-of-range head") {
  PredictedTree p = make_predicted({{1, "a", 2, ""},
                                    {2, "b", 0, ""},
                                    {3, "c", 99, ""}});
  REQUIRE(p.violations.size() == 1);
  CHECK(p.violations[0].kind == ViolationKind::HeadOutOfRange);
  AddResult r = compute_add(p, AddConvention::root_zero);
  CHECK(r.word_count == 3);     // out-of-range node still counts
  CHECK(r.sum_distance == 1);   // only 1->2 contributes
}

TEST_CASE("make_predicted: violation classes are exhaustive") {
  PredictedTree p = make_predicted({{1, "a", 0, ""}, {2, "b", 0, ""}});
  REQUIRE(p.violations.size() == 1);
  CHECK(p.violations[0].kind == ViolationKind::MultipleRoots);

  p = make_predicted({{1, "a", 2, ""}, {2, "b", 1, ""}});
  REQUIRE(p.violations.size() == 1);
  CHECK(p.violations[0].kind == ViolationKind::NoRoot);

  p = make_predicted({{1, "a", 0, ""}, {1, "b", 1, ""}});
  bool saw_dup = false;
  for (const auto& v : p.violations)
    saw_dup |= v.kind == ViolationKind::DuplicatedIndex;
  CHECK(saw_dup);
}

TEST_CASE("add: lower bound property on random trees") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const int n = 1 + static_cast<int>(rng() % 25);
    GoldTree t = random_tree(rng, n);
    const double zero = compute_add(t, AddConvention::root_zero).add;
    const double index = compute_add(t, AddConvention::root_index).add;
    CHECK(zero >= static_cast<double>(n - 1) / static_cast<double>(n) - 1e-12);
    CHECK(index >= 1.0 - 1e-12);
    CHECK(index >= zero);
  }
}

TEST_CASE("gold fixtures: ADD sits in a plausible band") {
  for (const std::string& id : testutil::corpus_ids()) {
    auto trees = parse_conllu(testutil::read_file(
        testutil::data_dir() / "corpus" / (id + ".conllu")));
    const double add = compute_add(trees[0], AddConvention::root_zero).add;
    // report-level advisory band, wide enough for short informal sentences
    CHECK_MESSAGE(add > 1.0, id);
    CHECK_MESSAGE(add < 6.0, id);
  }
}

TEST_SUITE_END();
