#include <doctest.h>

#include <sstream>

#include "kpgen/codec.hpp"
#include "kpgen/corpus.hpp"
#include "test_support.hpp"

using namespace kpgen;
using L = std::vector<std::string>;

namespace {

LoadedSplit parse(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return parse_split(in, "mem.jsonl");
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("keywords as a semicolon string") {
  const auto split = parse(R"({"title":"A","abstract":"B","keywords":"x;y"})" "\n");
  REQUIRE(split.documents.size() == 1);
  CHECK(split.documents[0].title == "A");
  CHECK(split.documents[0].abstract == "B");
  CHECK(split.documents[0].gold == L{"x", "y"});
}

TEST_CASE("keywords as an array give the same gold list") {
  const auto a = parse(R"({"title":"A","abstract":"B","keywords":["x","y"]})" "\n");
  const auto b = parse(R"({"title":"A","abstract":"B","keywords":" x ; ;y;"})" "\n");
  CHECK(a.documents[0].gold == L{"x", "y"});
  CHECK(b.documents[0].gold == a.documents[0].gold);
}

TEST_CASE("missing id is synthesized from source and line") {
  const auto split = parse("\n" R"({"title":"A","abstract":"B"})" "\n");
  CHECK(split.documents[0].id == "mem.jsonl:2");
  CHECK(split.documents[0].gold.empty());
}

TEST_CASE("malformed JSON carries the line number") {
  try {
    parse(R"({"title":"A","abstract":"B"})" "\n{oops\n");
    FAIL("expected CorpusError");
  } catch (const CorpusError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("record-level problems are collected, not fatal") {
  const auto split = parse(R"({"id":"a","keywords":"x"})" "\n"
                           R"({"id":"b","title":"T","abstract":"A"})" "\n"
                           R"({"id":"b","title":"T","abstract":"A"})" "\n"
                           R"({"id":"c","title":"T","keywords":5})" "\n"
                           R"({"id":"d","title":null,"abstract":"A"})" "\n");
  REQUIRE(split.documents.size() == 2);
  CHECK(split.documents[0].id == "b");
  CHECK(split.documents[1].id == "d");
  REQUIRE(split.issues.size() == 3);
  CHECK(split.issues[0].line == 1);
  CHECK(split.issues[1].line == 3);
  CHECK(split.issues[2].line == 4);
}

TEST_CASE("no lowercasing or other preprocessing at load time") {
  const auto split = parse(R"({"title":"DNA  Repair","abstract":"In 2019, X.","keywords":"DNA Repair"})" "\n");
  CHECK(split.documents[0].title == "DNA  Repair");
  CHECK(split.documents[0].gold == L{"DNA Repair"});
}

TEST_CASE("demo record from the fixture corpus") {
  const auto split = load_split(testing::data_path("fixture_corpus.jsonl"));
  CHECK(split.issues.empty());
  REQUIRE(split.documents.size() == 25);
  CHECK(split.documents[0].abstract.find("collaborative target detection") != std::string::npos);
  CHECK(split.documents[3].id == "fixture_corpus.jsonl:4");
}

TEST_CASE("load_split on a missing file") {
  CHECK_THROWS_AS(load_split("/nonexistent/file.jsonl"), CorpusError);
}

TEST_CASE("build_source_text joiner") {
  CHECK(build_source_text({"d", "T", "A", {}}) == "T. A");
  CHECK(build_source_text({"d", "T?", "A", {}}) == "T? A");
  CHECK(build_source_text({"d", "T.", "A", {}}) == "T. A");
  CHECK(build_source_text({"d", "", "A", {}}) == "A");
  CHECK(build_source_text({"d", "T", "", {}}) == "T");
  CHECK_THROWS_AS(build_source_text({"d", " ", "", {}}), std::invalid_argument);
}

TEST_CASE("single-paragraph document yields one pair") {
  const std::vector<Document> docs{{"d1", "Title", "Body text here.", {"a", "b"}}};
  const auto out = prepare_training_pairs(docs, SegmenterConfig{});
  REQUIRE(out.pairs.size() == 1);
  CHECK(out.pairs[0].target == "[a, b]");
  CHECK(out.pairs[0].source == "Title. Body text here.");
  CHECK(out.pairs[0].origin_doc_id == "d1");
  CHECK(out.pairs[0].paragraph_index == 0);
}

TEST_CASE("three paragraphs under budget 20 replicate the gold target") {
  // Sentence token counts: title 2 + 10 | 10 | 11  (hand count, budget 20)
  const std::vector<Document> docs{
      {"p2", "Packing test",
       "The first sentence has exactly ten tokens in it here. See Fig. 2 for the second "
       "sentence of ten tokens. A third sentence follows with eleven tokens in total right here.",
       {"a"}}};
  SegmenterConfig config;
  config.budget = 20;
  const auto out = prepare_training_pairs(docs, config);
  REQUIRE(out.pairs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(out.pairs[i].target == "[a]");
    CHECK(out.pairs[i].paragraph_index == i);
  }
  CHECK(out.pairs[1].source == "See Fig. 2 for the second sentence of ten tokens.");
}

TEST_CASE("empty gold is skipped and counted") {
  const std::vector<Document> docs{{"d", "T", "A", {}}, {"e", "T", "A", {"[,]"}}};
  const auto out = prepare_training_pairs(docs, SegmenterConfig{});
  CHECK(out.pairs.empty());
  CHECK(out.skipped_empty_gold == 1);
  CHECK(out.skipped_invalid == L{"e"});
}

TEST_CASE("pairs per document equal paragraphs, targets round-trip") {
  const auto split = load_split(testing::data_path("fixture_corpus.jsonl"));
  SegmenterConfig config;
  config.budget = 25;
  const auto out = prepare_training_pairs(split.documents, config);
  std::size_t cursor = 0;
  for (const auto& doc : split.documents) {
    const auto expected = segment(build_source_text(doc), config).size();
    std::size_t got = 0;
    while (cursor < out.pairs.size() && out.pairs[cursor].origin_doc_id == doc.id) {
      CHECK(parse_generated(out.pairs[cursor].target) == doc.gold);
      ++got;
      ++cursor;
    }
    CHECK(got == expected);
  }
  CHECK(cursor == out.pairs.size());
}

TEST_CASE("training pair serialization") {
  std::ostringstream os;
  write_training_pair(os, {"S \"q\"", "[a]", "id", 2});
  CHECK(os.str() ==
        "{\"source\":\"S \\\"q\\\"\",\"target\":\"[a]\",\"origin_doc_id\":\"id\",\"paragraph_index\":2}\n");
}

TEST_CASE("loading is deterministic") {
  const auto a = load_split(testing::data_path("fixture_corpus.jsonl"));
  const auto b = load_split(testing::data_path("fixture_corpus.jsonl"));
  CHECK(a.documents == b.documents);
}

}
