#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "toolprint/corpus.hpp"

namespace fs = std::filesystem;
using namespace toolprint;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "toolprint-test-corpus";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_lines(const std::string& name, const std::string& body) {
  const auto p = scratch(name);
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

std::string error_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("split_sentences follows the punctuation-plus-space rule") {
  CHECK(split_sentences("Good. Bad!") == std::vector<std::string>{"Good.", "Bad!"});
  CHECK(split_sentences("no punctuation") == std::vector<std::string>{"no punctuation"});
  CHECK(split_sentences("A? B. C") == std::vector<std::string>{"A?", "B.", "C"});
}

TEST_CASE("split_sentences edge cases") {
  CHECK(split_sentences("3.14 is pi. Yes") == std::vector<std::string>{"3.14 is pi.", "Yes"});
  CHECK(split_sentences("Wait...  what?") == std::vector<std::string>{"Wait...", "what?"});
  CHECK(split_sentences("End.") == std::vector<std::string>{"End."});
  CHECK(split_sentences("  padded.  ") == std::vector<std::string>{"padded."});
  CHECK(split_sentences("") == std::vector<std::string>{""});
  CHECK(split_sentences(". . .") == std::vector<std::string>{".", ".", "."});
}

TEST_CASE("split_sentences is idempotent on its own joined output") {
  const auto spec = SynthCorpusSpec{};
  const auto corpus = generate_synthetic_corpus(spec, 5);
  for (const auto& doc : corpus.documents) {
    const auto once = split_sentences(doc.text);
    std::string joined;
    for (const auto& s : once) joined += (joined.empty() ? "" : " ") + s;
    CHECK(split_sentences(joined) == once);
  }
}

TEST_CASE("load_corpus keeps file order and leaves sentences unset") {
  const auto p = write_lines("two.jsonl",
                             "{\"id\":\"a\",\"lang\":\"en\",\"genre\":\"wiki\",\"text\":\"First one.\"}\n"
                             "{\"id\":\"b\",\"text\":\"Second. Two sentences\",\"sentences\":[\"Second.\",\"Two sentences\"]}\n");
  const auto c = load_corpus(p, {"C2"});
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].id == "a");
  CHECK(c.documents[0].genre == "wiki");
  CHECK_FALSE(c.documents[0].sentences.has_value());
  CHECK(sentences_of(c.documents[0]) == std::vector<std::string>{"First one."});
  CHECK(c.documents[1].sentences->size() == 2);
  CHECK(c.group_tags == std::set<std::string>{"C2"});
}

TEST_CASE("load_corpus reports errors with line numbers and ids") {
  const auto dup = write_lines("dup.jsonl",
                               "{\"id\":\"d1\",\"text\":\"x\"}\n{\"id\":\"d2\",\"text\":\"y\"}\n{\"id\":\"d1\",\"text\":\"z\"}\n");
  CHECK(error_of([&] { load_corpus(dup); }) == "duplicate id d1 at line 3");

  const auto empty = write_lines("empty.jsonl", "");
  CHECK(error_of([&] { load_corpus(empty); }) == "empty corpus");

  const auto bad = write_lines("bad.jsonl", "{\"id\":\"ok\",\"text\":\"x\"}\n{not json}\n");
  CHECK(error_of([&] { load_corpus(bad); }).starts_with("malformed line 2"));

  const auto no_text = write_lines("notext.jsonl", "{\"id\":\"only\"}\n");
  CHECK(error_of([&] { load_corpus(no_text); }).starts_with("malformed line 1"));

  CHECK_THROWS_AS(load_corpus(scratch("missing.jsonl")), Error);
}

TEST_CASE("save then load round-trips every field") {
  SynthCorpusSpec spec;
  spec.n_docs = 40;
  auto corpus = generate_synthetic_corpus(spec, 11);
  corpus.documents[3].text = "Unicode \xc3\xa9t\xc3\xa9 and \"quotes\"\tand tabs.";
  corpus.documents[3].sentences.reset();
  const auto p = scratch("roundtrip.jsonl");
  save_corpus(corpus, p);
  const auto back = load_corpus(p, corpus.group_tags, corpus.name);
  CHECK(back == corpus);
}

TEST_CASE("synthetic corpora are a pure function of spec and seed") {
  SynthCorpusSpec spec;
  spec.n_docs = 10;
  CHECK(to_jsonl(generate_synthetic_corpus(spec, 1)) == to_jsonl(generate_synthetic_corpus(spec, 1)));
  CHECK(to_jsonl(generate_synthetic_corpus(spec, 1)) != to_jsonl(generate_synthetic_corpus(spec, 2)));
  // Prefix stability: document i does not depend on n_docs.
  SynthCorpusSpec longer = spec;
  longer.n_docs = 20;
  const auto a = generate_synthetic_corpus(spec, 1), b = generate_synthetic_corpus(longer, 1);
  for (std::size_t i = 0; i < a.documents.size(); ++i) CHECK(a.documents[i] == b.documents[i]);
}

TEST_CASE("synthetic corpus with zero documents is an error") {
  SynthCorpusSpec spec;
  spec.n_docs = 0;
  CHECK_THROWS_AS(generate_synthetic_corpus(spec, 1), Error);
}

TEST_CASE("latent sentiment fixed at +1 yields more positive than negative tokens") {
  SynthCorpusSpec spec;
  spec.n_docs = 200;
  spec.latent.kind = LatentDistribution::Kind::fixed;
  spec.latent.a = 1.0;
  const auto corpus = generate_synthetic_corpus(spec, 9);
  const auto& lex = demo_lexicon();
  for (const auto& doc : corpus.documents) {
    int pos = 0, neg = 0;
    for (const auto& tok : tokenize(doc.text)) {
      if (const double* v = lex.valence(tok)) {
        if (*v > 0) ++pos;
        if (*v < 0) ++neg;
      }
    }
    CHECK(pos > neg);
    CHECK(doc.latent_sentiment == 1.0);
  }
}

TEST_CASE("synthetic documents carry consistent sentences") {
  SynthCorpusSpec spec;
  spec.n_docs = 50;
  spec.min_sentences = 2;
  spec.max_sentences = 3;
  const auto corpus = generate_synthetic_corpus(spec, 3);
  for (const auto& doc : corpus.documents) {
    REQUIRE(doc.sentences.has_value());
    CHECK(doc.sentences->size() >= 2);
    CHECK(doc.sentences->size() <= 3);
    CHECK(split_sentences(doc.text) == *doc.sentences);
    CHECK(doc.latent_sentiment.has_value());
    CHECK(*doc.latent_sentiment >= -1.0);
    CHECK(*doc.latent_sentiment <= 1.0);
  }
}

TEST_CASE("corpus validation") {
  Corpus c;
  c.name = "x";
  c.group_tags = {"C1"};
  CHECK_THROWS_WITH(c.validate(), "empty corpus");
  c.documents.push_back({.id = "a", .text = "t"});
  c.validate();
  c.documents.push_back({.id = "a", .text = "u"});
  CHECK_THROWS_WITH(c.validate(), "duplicate id a");
  c.documents.back().id = "b";
  c.group_tags = {"C9"};
  CHECK_THROWS_AS(c.validate(), Error);
  c.group_tags.clear();
  CHECK_THROWS_AS(c.validate(), Error);
}
