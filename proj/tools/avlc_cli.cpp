// avlc: build asymmetric-cost codes, encode and decode line files, and
// compare write cost against FNW, FPC and BDI.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "avlc/baselines.hpp"
#include "avlc/code_builder.hpp"
#include "avlc/codebook.hpp"
#include "avlc/corpus.hpp"
#include "avlc/encoded_file.hpp"
#include "avlc/errors.hpp"
#include "avlc/eval.hpp"
#include "avlc/report.hpp"
#include "avlc/vlc_codec.hpp"

using namespace avlc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kIo = 3 };

struct CostFlags {
  std::string alpha0 = "2";
  std::string alpha1 = "1";

  void attach(CLI::App* app) {
    app->add_option("--alpha0", alpha0, "Cost of writing a 0 bit (decimal or p/q)")->capture_default_str();
    app->add_option("--alpha1", alpha1, "Cost of writing a 1 bit (decimal or p/q)")->capture_default_str();
  }
  CostModel model() const {
    try {
      return CostModel(parse_rational(alpha0), parse_rational(alpha1));
    } catch (const DataError& e) {
      throw UsageError(e.what());
    }
  }
};

struct CorpusFlags {
  std::vector<std::string> inputs;
  std::string synthetic;
  std::size_t blocks = 10000;
  std::uint64_t seed = 1;
  std::size_t block_size = Block::kBytes;

  void attach(CLI::App* app) {
    app->add_option("inputs", inputs, "Raw binary or .trace corpus files");
    app->add_option("--synthetic", synthetic, "Generated corpus instead of files: zero-heavy:<p>");
    app->add_option("--blocks", blocks, "Lines to generate with --synthetic")->capture_default_str();
    app->add_option("--seed", seed, "Seed for --synthetic")->capture_default_str();
    app->add_option("--block-size", block_size, "Line size in bytes")->capture_default_str();
  }
  std::vector<CorpusBlock> load() const {
    if (!synthetic.empty() && !inputs.empty()) throw UsageError("give input files or --synthetic, not both");
    if (block_size != Block::kBytes) throw UsageError("only 64-byte blocks are supported");
    if (!synthetic.empty()) return synthetic_zero_heavy(blocks, parse_synthetic_spec(synthetic), seed);
    if (inputs.empty()) throw UsageError("no corpus: give input files or --synthetic");
    std::vector<CorpusBlock> all;
    for (const auto& path : inputs) {
      auto part = blocks_from_file(path, block_size);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
};

FlagPolicy parse_policy(const std::string& s) {
  if (s == "include") return FlagPolicy::Include;
  if (s == "exclude") return FlagPolicy::Exclude;
  throw UsageError("--flag-policy must be include or exclude");
}

Codebook load_codebook(const std::string& spec) {
  if (spec == "table1") return table1_codebook();
  return read_codebook(spec);
}

// Writes to path, or stdout when path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, bool binary, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path);
  fn(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

BuiltCode build_from(const FrequencyTable& freqs, const CostModel& model, unsigned min_len,
                     unsigned max_len, unsigned workers) {
  BuildOptions opts;
  opts.workers = workers;
  return build_codebook(freqs, model, DepthConstraint(min_len, max_len), opts);
}

void write_built(std::ostream& out, const BuiltCode& c, const CostModel& model) {
  out << "# alpha0 = " << to_string(model.alpha0()) << ", alpha1 = " << to_string(model.alpha1()) << '\n'
      << "# shape " << c.shape.to_string() << '\n'
      << "# expected_cost = " << to_string(c.stats.expected_cost) << " ("
      << to_decimal(c.stats.expected_cost, 6) << ")\n"
      << "# expected_length = " << to_string(c.stats.expected_length) << '\n';
  write_codebook(out, c.book);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Variable-length coding for memories with asymmetric 0/1 write costs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "avlc 1.0");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Data-word histogram of a corpus");
  CorpusFlags a_corpus;
  unsigned a_bits = 4;
  std::string a_out;
  a_corpus.attach(analyze);
  analyze->add_option("--symbol-bits", a_bits, "Data word width (2 or 4)")->capture_default_str();
  analyze->add_option("-o,--output", a_out, "Frequency file to write (default stdout)");

  // build-code
  auto* build = app.add_subcommand("build-code", "Cheapest prefix code for a distribution");
  CostFlags b_cost;
  CorpusFlags b_corpus;
  std::string b_freqs, b_out;
  unsigned b_bits = 4, b_min = 3, b_max = 5, b_workers = 1;
  bool b_list = false;
  b_cost.attach(build);
  b_corpus.attach(build);
  build->add_option("--freqs", b_freqs, "Frequency file (instead of a corpus)");
  build->add_option("--symbol-bits", b_bits, "Data word width when reading a corpus")->capture_default_str();
  build->add_option("--min-len", b_min, "Shortest codeword")->capture_default_str();
  build->add_option("--max-len", b_max, "Longest codeword")->capture_default_str();
  build->add_option("--workers", b_workers, "Search threads")->capture_default_str();
  build->add_flag("--list-shapes", b_list, "Print the admissible tree shapes and exit");
  build->add_option("-o,--output", b_out, "Codebook file to write (default stdout)");

  // encode
  auto* encode = app.add_subcommand("encode", "Encode a file line by line");
  CostFlags e_cost;
  std::string e_in, e_out, e_book = "table1";
  std::size_t e_block = Block::kBytes;
  bool e_cost_fallback = false;
  e_cost.attach(encode);
  encode->add_option("input", e_in, "File to encode")->required();
  encode->add_option("-o,--output", e_out, "Encoded file")->required();
  encode->add_option("--codebook", e_book, "Codebook file, or table1")->capture_default_str();
  encode->add_option("--block-size", e_block, "Line size in bytes")->capture_default_str();
  encode->add_flag("--cost-fallback", e_cost_fallback,
                   "Store a line raw unless encoding is strictly cheaper under the cost model");

  // decode
  auto* decode = app.add_subcommand("decode", "Decode an encoded file");
  std::string d_in, d_out, d_book = "table1";
  decode->add_option("input", d_in, "Encoded file")->required();
  decode->add_option("-o,--output", d_out, "Decoded output")->required();
  decode->add_option("--codebook", d_book, "Codebook file, or table1")->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "Total write cost per codec over a corpus");
  CostFlags v_cost;
  CorpusFlags v_corpus;
  std::string v_codecs = "vlc,fnw,fpc,bdi,fpc+bdi", v_book, v_report, v_format, v_chart,
              v_policy = "include";
  unsigned v_min = 3, v_max = 5, v_fnw = 8, v_workers = 1;
  bool v_cost_fallback = false;
  v_cost.attach(eval);
  v_corpus.attach(eval);
  eval->add_option("--codecs", v_codecs, "Comma-separated: vlc,fnw,fpc,bdi,fpc+bdi,raw")->capture_default_str();
  eval->add_option("--codebook", v_book,
                   "Codebook file or table1; default builds one from the corpus histogram");
  eval->add_option("--min-len", v_min, "Shortest codeword when building")->capture_default_str();
  eval->add_option("--max-len", v_max, "Longest codeword when building")->capture_default_str();
  eval->add_option("--fnw-word-bits", v_fnw, "FNW word size (4, 8, 16, 32)")->capture_default_str();
  eval->add_option("--flag-policy", v_policy, "include or exclude")->capture_default_str();
  eval->add_flag("--cost-fallback", v_cost_fallback, "Cost-driven VLC fallback");
  eval->add_option("--report", v_report, "Report file (default stdout)");
  eval->add_option("--format", v_format, "csv or text (default csv for files, text on stdout)");
  eval->add_option("--chart", v_chart, "Also write codec,normalized_cost chart data here");
  eval->add_option("--workers", v_workers, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*analyze) {
    const auto corpus = a_corpus.load();
    const FrequencyTable h = pattern_histogram(corpus, a_bits);
    with_output(a_out, false, [&](std::ostream& out) {
      out << "# " << corpus.size() << " lines, " << to_string(h.total()) << " data words\n";
      write_frequency_table(out, h);
    });
    return kOk;
  }

  if (*build) {
    if (b_list) {
      const unsigned leaves = 1u << b_bits;
      if (b_bits > 4) throw UnsupportedSizeError("shape listing is limited to 16 leaves");
      for (const auto& s : enumerate_shapes(leaves, DepthConstraint(b_min, b_max))) {
        std::cout << s.to_string() << '\n';
      }
      return kOk;
    }
    FrequencyTable freqs(1);
    if (!b_freqs.empty()) {
      if (!b_corpus.inputs.empty() || !b_corpus.synthetic.empty()) {
        throw UsageError("give --freqs or a corpus, not both");
      }
      freqs = read_frequency_table(b_freqs);
    } else {
      freqs = pattern_histogram(b_corpus.load(), b_bits);
    }
    const CostModel model = b_cost.model();
    const BuiltCode c = build_from(freqs, model, b_min, b_max, b_workers);
    with_output(b_out, false, [&](std::ostream& out) { write_built(out, c, model); });
    return kOk;
  }

  if (*encode) {
    const CostModel model = e_cost.model();
    const VlcCodec codec(load_codebook(e_book));
    const auto blocks = blocks_from_file(e_in, e_block);
    std::vector<EncodedBlock> enc;
    enc.reserve(blocks.size());
    std::size_t raw = 0;
    for (const auto& b : blocks) {
      enc.push_back(codec.encode(b.block, model, e_cost_fallback ? FallbackMode::Cost : FallbackMode::Length));
      raw += enc.back().encoded ? 0 : 1;
    }
    write_encoded(e_out, enc);
    std::cerr << "encoded " << blocks.size() << " lines, " << raw << " stored raw\n";
    return kOk;
  }

  if (*decode) {
    const VlcCodec codec(load_codebook(d_book));
    const auto enc = read_encoded(d_in);
    with_output(d_out, true, [&](std::ostream& out) {
      for (const auto& e : enc) {
        const Block b = codec.decode(e);
        out.write(reinterpret_cast<const char*>(b.bytes.data()), static_cast<std::streamsize>(b.bytes.size()));
      }
    });
    return kOk;
  }

  // eval
  const CostModel model = v_cost.model();
  std::vector<CodecId> codecs;
  {
    std::stringstream ss(v_codecs);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto id = parse_codec(name);
      if (!id) throw UsageError("unknown codec '" + name + "'");
      codecs.push_back(*id);
    }
  }
  const auto corpus = v_corpus.load();
  const bool wants_vlc = std::find(codecs.begin(), codecs.end(), CodecId::Vlc) != codecs.end();
  std::optional<Codebook> book;
  if (wants_vlc) {
    if (!v_book.empty()) {
      book = load_codebook(v_book);
    } else {
      book = build_from(pattern_histogram(corpus, 4), model, v_min, v_max, v_workers).book;
    }
  } else if (!v_book.empty()) {
    throw UsageError("--codebook given but vlc is not among --codecs");
  }

  EvalOptions opts;
  opts.flag_policy = parse_policy(v_policy);
  opts.fnw_word_bits = v_fnw;
  opts.fallback = v_cost_fallback ? FallbackMode::Cost : FallbackMode::Length;
  opts.workers = v_workers;
  const CostReport report = run_eval(corpus, codecs, model, book, opts);

  ReportFormat format = v_report.empty() ? ReportFormat::Text : ReportFormat::Csv;
  if (v_format == "csv") {
    format = ReportFormat::Csv;
  } else if (v_format == "text") {
    format = ReportFormat::Text;
  } else if (!v_format.empty()) {
    throw UsageError("--format must be csv or text");
  }
  if (v_report.empty() || v_report == "-") {
    format == ReportFormat::Csv ? write_csv(std::cout, report) : write_text(std::cout, report);
    if (!v_chart.empty()) with_output(v_chart, false, [&](std::ostream& out) { write_chart(out, report); });
  } else {
    emit_report(report, format, v_report,
                v_chart.empty() ? std::nullopt : std::optional<std::filesystem::path>(v_chart));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "avlc: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "avlc: " << e.what() << '\n';
    return kIo;
  } catch (const DataError& e) {
    std::cerr << "avlc: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "avlc: internal error: " << e.what() << '\n';
    return kData;
  }
}
