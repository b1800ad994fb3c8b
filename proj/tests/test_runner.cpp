#include "doctest.h"

#include "topoharq/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "topoharq/config.hpp"
#include "topoharq/synthetic.hpp"

using namespace topoharq;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Synthetic PPM corpus on disk; zero-padded names keep generation order.
fs::path corpus_dir(int count, int side) {
  fs::path dir = testutil::temp_dir();
  for (int i = 0; i < count; ++i) {
    RgbImage img = make_synthetic_image(side, side, 9000 + i, i);
    std::vector<int> rgb(img.data.begin(), img.data.end());
    char name[32];
    std::snprintf(name, sizeof name, "img_%03d.ppm", i);
    testutil::write_file(dir / name, testutil::ppm_bytes(side, side, rgb));
  }
  return dir;
}

// Clears TOPOHARQ_WORKERS for the enclosing scope.
struct EnvGuard {
  EnvGuard() { unsetenv("TOPOHARQ_WORKERS"); }
  ~EnvGuard() { unsetenv("TOPOHARQ_WORKERS"); }
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Minimal RFC 4180 row parser; quoted cells may hold commas.
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("config files parse comments, lists and every key") {
  fs::path dir = testutil::temp_dir();
  fs::path file = dir / "run.cfg";
  testutil::write_file(file,
                       "# full-line comment\n"
                       "corpus = /data/imgs\n"
                       "model= out/detector.json\n"
                       "channel = rayleigh  # inline comment\n"
                       "snr-db = 0, 3.5 ,10\n"
                       "rate = 0.25,1\n"
                       "\n"
                       "nu = 100.5\n"
                       "n-max = 5\n"
                       "seed = 42\n"
                       "select-count = 28\n"
                       "quality-target-db = 18\n"
                       "calibration-snr-db = 7\n"
                       "workers = 2\n"
                       "betti-samples = 8\n"
                       "landscape-samples = 50\n"
                       "heat-grid = 16\n");
  ExperimentConfig cfg = load_config(file.string());
  CHECK(cfg.corpus == "/data/imgs");
  CHECK(cfg.model == "out/detector.json");
  CHECK(cfg.channel == "rayleigh");
  CHECK(cfg.fading() == FadingKind::rayleigh);
  CHECK(cfg.snr_db == std::vector<double>{0, 3.5, 10});
  CHECK(cfg.rate == std::vector<double>{0.25, 1});
  CHECK(cfg.nu == 100.5);
  CHECK(cfg.n_max == 5);
  CHECK(cfg.seed == 42);
  CHECK(cfg.select_count == 28);
  CHECK(cfg.quality_target_db == 18);
  CHECK(cfg.calibration_snr_db == 7);
  CHECK(cfg.workers == 2);
  CHECK(cfg.betti_samples == 8);
  CHECK(cfg.landscape_samples == 50);
  CHECK(cfg.heat_grid == 16);
}

TEST_CASE("config rejects unusable files and values") {
  fs::path dir = testutil::temp_dir();

  CHECK_THROWS_AS(load_config((dir / "absent.cfg").string()), config_error);

  fs::path unknown = dir / "unknown.cfg";
  testutil::write_file(unknown, "seed = 1\nbogus-key = 2\n");
  CHECK_THROWS_WITH_AS(load_config(unknown.string()),
                       doctest::Contains("unknown config key 'bogus-key'"), config_error);

  fs::path noeq = dir / "noeq.cfg";
  testutil::write_file(noeq, "seed = 1\njust words\n");
  CHECK_THROWS_WITH_AS(load_config(noeq.string()), doctest::Contains(":2:"), config_error);

  fs::path nokey = dir / "nokey.cfg";
  testutil::write_file(nokey, "= 3\n");
  CHECK_THROWS_AS(load_config(nokey.string()), config_error);

  ExperimentConfig cfg;
  CHECK_THROWS_AS(apply_override(cfg, "nu", "260"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "nu", "-1"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "nu", "red"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "n-max", "0"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "workers", "-1"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "betti-samples", "1"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "landscape-samples", "0"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "heat-grid", "0"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "select-count", "0"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "channel", "laser"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "snr-db", "3,x"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "seed", "1.5"), config_error);
}

TEST_CASE("embedding dimensions define the swept code rates") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_rates() == std::vector<double>{1.0 / 3.0});

  apply_override(cfg, "embedding-dim", "32, 8");
  CHECK(cfg.stages == 2);
  std::vector<double> rates = cfg.resolved_rates();
  REQUIRE(rates.size() == 2);
  CHECK(rates[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rates[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  apply_override(cfg, "stages", "4");
  CHECK(cfg.resolved_rates()[0] == doctest::Approx(32.0 / (6 * 256)).epsilon(1e-15));

  // A later explicit rate list wins back over the embedding spec.
  apply_override(cfg, "rate", "0.5");
  CHECK(cfg.embedding_dim.empty());
  CHECK(cfg.resolved_rates() == std::vector<double>{0.5});
}

TEST_CASE("the environment variable trumps the configured worker count") {
  EnvGuard guard;
  ExperimentConfig cfg;
  cfg.workers = 2;
  CHECK(cfg.resolved_workers() == 2);

  setenv("TOPOHARQ_WORKERS", "5", 1);
  CHECK(cfg.resolved_workers() == 5);

  setenv("TOPOHARQ_WORKERS", "many", 1);
  CHECK_THROWS_AS(cfg.resolved_workers(), config_error);
  setenv("TOPOHARQ_WORKERS", "-2", 1);
  CHECK_THROWS_AS(cfg.resolved_workers(), config_error);
}

TEST_CASE("reals print with round-trip precision") {
  for (double v : {1.0 / 3.0, 0.1, 1e-17, 12345.6789, -2.5e300}) {
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(128.0) == "128");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("corpus loading sorts by filename and keeps only rasters") {
  fs::path dir = testutil::temp_dir();
  testutil::write_file(dir / "b.pgm", testutil::pgm_bytes(2, 2, {0, 50, 100, 150}));
  testutil::write_file(dir / "a.ppm",
                       testutil::ppm_bytes(1, 2, {10, 10, 10, 20, 20, 20}));
  testutil::write_file(dir / "c.PGM", testutil::pgm_bytes(1, 1, {7}));
  testutil::write_file(dir / "notes.txt", std::string("not an image"));

  std::vector<CorpusEntry> corpus = load_corpus(dir.string());
  REQUIRE(corpus.size() == 3);
  CHECK(corpus[0].name == "a.ppm");
  CHECK(corpus[1].name == "b.pgm");
  CHECK(corpus[2].name == "c.PGM");
  CHECK(corpus[0].image.width == 2);
  CHECK(corpus[1].image.height == 2);
  CHECK(corpus[2].image.data[0] == 7);

  CHECK_THROWS_AS(load_corpus((dir / "missing").string()), config_error);
  CHECK_THROWS_AS(load_corpus(""), config_error);
  fs::path empty = testutil::temp_dir();
  testutil::write_file(empty / "readme.txt", std::string("x"));
  CHECK_THROWS_AS(load_corpus(empty.string()), config_error);
}

TEST_CASE("extraction writes a stable feature table") {
  EnvGuard guard;
  fs::path corpus = corpus_dir(3, 16);
  ExperimentConfig cfg;
  cfg.corpus = corpus.string();

  fs::path out1 = testutil::temp_dir();
  run_extract(cfg, out1.string());
  std::string text = read_file(out1 / "features.csv");

  std::vector<std::string> lines = split(text, '\n');
  size_t row = 0;
  while (row < lines.size() && lines[row].rfind("#", 0) == 0) ++row;
  CHECK(row > 0);  // config header present
  REQUIRE(row + 4 <= lines.size());

  std::vector<std::string> header = csv_split(lines[row]);
  REQUIRE(header.size() == 477);
  CHECK(header[0] == "image");
  CHECK(header[1] == "height(1,0)|q0|betti|s0");
  CHECK(header[476] == "radial(15,7)|q1|entropy");

  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> cells = csv_split(lines[row + 1 + i]);
    REQUIRE(cells.size() == 477);
    char expect[32];
    std::snprintf(expect, sizeof expect, "img_%03d.ppm", i);
    CHECK(cells[0] == expect);
  }

  fs::path out2 = testutil::temp_dir();
  run_extract(cfg, out2.string());
  CHECK(read_file(out2 / "features.csv") == text);
}

TEST_CASE("calibration writes the detector and selection files") {
  EnvGuard guard;
  fs::path corpus = corpus_dir(50, 16);
  ExperimentConfig cfg;
  cfg.corpus = corpus.string();
  cfg.rate = {1.0};

  fs::path out = testutil::temp_dir();
  run_calibrate(cfg, out.string());

  nlohmann::json det = nlohmann::json::parse(read_file(out / "detector.json"));
  REQUIRE(det.at("mask").size() == 28);
  CHECK(det.at("means").size() == 28);
  CHECK(det.at("stds").size() == 28);
  CHECK(det.at("chi").get<double>() >= 0);
  CHECK(det.at("distance") == "rms");
  CHECK(det.at("config").at("corpus") == cfg.corpus);

  nlohmann::json mask = nlohmann::json::parse(read_file(out / "selection_mask.json"));
  CHECK(mask.at("indices") == det.at("mask"));
  CHECK(mask.at("greedy_bound").get<double>() > 0);

  DetectorModel model = load_detector((out / "detector.json").string());
  CHECK(model.mask.size() == 28);
  CHECK(model.chi == det.at("chi").get<double>());

  ExperimentConfig bad = cfg;
  bad.select_count = 27;
  CHECK_THROWS_AS(run_calibrate(bad, out.string()), config_error);
}

TEST_CASE("detector files round trip and validate on load") {
  fs::path dir = testutil::temp_dir();
  DetectorModel m;
  for (int i = 0; i < 28; ++i) {
    m.mask.push_back(i * 3);
    m.mean.push_back(0.5 * i);
    m.stdev.push_back(1.0 + i);
  }
  m.chi = 2.75;
  m.greedy_bound = 0.4;

  fs::path file = dir / "model.json";
  save_detector(m, ExperimentConfig{}, file.string());
  DetectorModel back = load_detector(file.string());
  CHECK(back.mask == m.mask);
  CHECK(back.mean == m.mean);
  CHECK(back.stdev == m.stdev);
  CHECK(back.chi == m.chi);
  CHECK(back.greedy_bound == m.greedy_bound);
  CHECK(back.distance == "rms");

  CHECK_THROWS_AS(load_detector((dir / "absent.json").string()), config_error);

  fs::path garbage = dir / "garbage.json";
  testutil::write_file(garbage, std::string("not json at all"));
  CHECK_THROWS_AS(load_detector(garbage.string()), config_error);

  fs::path partial = dir / "partial.json";
  testutil::write_file(partial, std::string(R"({"mask":[1],"means":[0]})"));
  CHECK_THROWS_AS(load_detector(partial.string()), config_error);

  fs::path ragged = dir / "ragged.json";
  testutil::write_file(
      ragged,
      std::string(
          R"({"mask":[1,2],"means":[0],"stds":[1],"chi":0,"distance":"rms"})"));
  CHECK_THROWS_AS(load_detector(ragged.string()), config_error);

  fs::path alien = dir / "alien.json";
  testutil::write_file(
      alien,
      std::string(R"({"mask":[1],"means":[0],"stds":[1],"chi":0,"distance":"l1"})"));
  CHECK_THROWS_AS(load_detector(alien.string()), config_error);
}

TEST_CASE("sweep writes session records and recomputable summaries") {
  EnvGuard guard;
  fs::path corpus = corpus_dir(4, 16);

  DetectorModel model;
  for (int i = 0; i < 28; ++i) model.mask.push_back(i);
  model.mean.assign(28, 0.0);
  model.stdev.assign(28, 1.0);
  model.chi = 1e18;  // accept on the first attempt, keeps the grid cheap
  fs::path model_file = testutil::temp_dir() / "detector.json";
  save_detector(model, ExperimentConfig{}, model_file.string());

  ExperimentConfig cfg;
  cfg.corpus = corpus.string();
  cfg.model = model_file.string();
  cfg.snr_db = {3, 10};
  cfg.rate = {1.0 / 3.0};

  fs::path out = testutil::temp_dir();
  run_sweep(cfg, out.string());

  std::vector<std::string> lines = split(read_file(out / "results.jsonl"), '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  REQUIRE(lines.size() == 1 + 4 * 2);
  CHECK(nlohmann::json::parse(lines[0]).contains("config"));

  std::map<double, std::pair<double, int>> psnr_by_snr;
  for (size_t i = 1; i < lines.size(); ++i) {
    nlohmann::json j = nlohmann::json::parse(lines[i]);
    CHECK(j.at("channel") == "awgn");
    CHECK(j.at("rate").get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(j.at("attempts") == 1);
    CHECK(j.at("zeta") == 1);
    REQUIRE(j.at("psnr_db").size() == 1);
    CHECK(j.at("distance").size() == 1);
    double ssim = j.at("ms_ssim").get<double>();
    CHECK(ssim > 0);
    CHECK(ssim <= 1.0);
    auto& [sum, count] = psnr_by_snr[j.at("snr_db").get<double>()];
    sum += j.at("psnr_db")[0].get<double>();
    ++count;
  }
  REQUIRE(psnr_by_snr.size() == 2);
  for (const auto& [snr, agg] : psnr_by_snr) CHECK(agg.second == 4);

  std::vector<std::string> summary = split(read_file(out / "summary.csv"), '\n');
  size_t row = 0;
  while (row < summary.size() && summary[row].rfind("#", 0) == 0) ++row;
  REQUIRE(summary[row] == "snr_db,rate,metric,value");
  int metric_rows = 0;
  for (size_t i = row + 1; i < summary.size(); ++i) {
    if (summary[i].empty()) continue;
    std::vector<std::string> cells = split(summary[i], ',');
    REQUIRE(cells.size() == 4);
    ++metric_rows;
    if (cells[2] == "mean_psnr_db") {
      auto& [sum, count] = psnr_by_snr.at(std::stod(cells[0]));
      CHECK(std::stod(cells[3]) == doctest::Approx(sum / count).epsilon(1e-12));
    }
  }
  CHECK(metric_rows == 2 * 4);  // two SNRs, four metrics

  // Same seed, same files, byte for byte.
  fs::path out2 = testutil::temp_dir();
  run_sweep(cfg, out2.string());
  CHECK(read_file(out2 / "results.jsonl") == read_file(out / "results.jsonl"));
  CHECK(read_file(out2 / "summary.csv") == read_file(out / "summary.csv"));

  ExperimentConfig no_model = cfg;
  no_model.model = "";
  CHECK_THROWS_AS(run_sweep(no_model, out.string()), config_error);

  testutil::write_file(corpus / "odd.pgm", testutil::pgm_bytes(15, 16, std::vector<int>(240, 9)));
  CHECK_THROWS_AS(run_sweep(cfg, out.string()), config_error);
}

TEST_CASE("diagram dumps name their sweep and list intervals") {
  fs::path dir = testutil::temp_dir();
  fs::path image = dir / "probe.pgm";
  testutil::write_file(image, testutil::pgm_bytes(4, 4,
                                                  {200, 200, 200, 200,
                                                   200, 10, 10, 200,
                                                   200, 10, 90, 200,
                                                   200, 200, 200, 200}));

  auto dump = [&](const std::string& filtration) {
    std::ostringstream out;
    run_dump_pd(image.string(), filtration, 128, out);
    return split(out.str(), '\n');
  };

  std::vector<std::string> gray = dump("grayscale");
  REQUIRE(gray.size() >= 2);
  nlohmann::json head = nlohmann::json::parse(gray[0]);
  CHECK(head.at("config").at("image") == image.string());
  CHECK(head.at("config").at("filtration") == "grayscale");
  CHECK(head.at("config").at("nu") == 128);
  bool essential_seen = false;
  for (size_t i = 1; i < gray.size(); ++i) {
    if (gray[i].empty()) continue;
    nlohmann::json j = nlohmann::json::parse(gray[i]);
    CHECK((j.at("q") == 0 || j.at("q") == 1));
    CHECK(j.at("birth").get<double>() <= j.at("death").get<double>());
    if (j.at("essential").get<bool>()) essential_seen = true;
  }
  CHECK(essential_seen);

  std::vector<std::string> paren = dump("height(1,0)");
  std::vector<std::string> colon = dump("height:1,0");
  REQUIRE(paren.size() == colon.size());
  for (size_t i = 1; i < paren.size(); ++i) CHECK(paren[i] == colon[i]);

  CHECK(dump("radial(1,1)").size() >= 2);

  CHECK_THROWS_AS(dump("spiral(1,0)"), config_error);
  CHECK_THROWS_AS(dump("height(1)"), config_error);
  CHECK_THROWS_AS(dump("height(a,b)"), config_error);
  CHECK_THROWS_AS(dump("height"), config_error);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_dump_pd((dir / "absent.png").string(), "grayscale", 128, sink),
                  std::exception);
}
