#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>

#include "filterscope/analysis.hpp"
#include "filterscope/class_variation.hpp"
#include "filterscope/error.hpp"
#include "filterscope/filter_spectrum.hpp"
#include "filterscope/io.hpp"
#include "filterscope/plot.hpp"
#include "filterscope/synth.hpp"

namespace filterscope::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string weights_path;
  std::string manifest_path;
  std::string accuracies_path;
  std::string out_dir;
  std::string fixture_kind;
  std::uint64_t seed = 0;
  bool plot = false;
  unsigned threads = 1;
  std::size_t welch_segment = 0;
  double welch_overlap = 0.5;
  std::string band_text;
  std::vector<int> downsample;

  BandDefinition band() const {
    if (band_text.empty()) return bands::lower;
    const auto colon = band_text.find(':');
    return make_band("custom", std::stod(band_text.substr(0, colon)), std::stod(band_text.substr(colon + 1)));
  }
  WelchConfig welch() const { return WelchConfig{welch_segment, welch_overlap}; }
};

const auto kBandValidator = CLI::Validator(
    [](std::string& text) -> std::string {
      const auto colon = text.find(':');
      if (colon == std::string::npos) return "expected LOW:HIGH";
      try {
        std::size_t used = 0;
        const double lo = std::stod(text.substr(0, colon), &used);
        if (used != colon) return "LOW is not a number";
        const std::string high_text = text.substr(colon + 1);
        const double hi = std::stod(high_text, &used);
        if (used != high_text.size()) return "HIGH is not a number";
        if (!(lo >= 0.0 && lo < hi)) return "band needs 0 <= LOW < HIGH";
      } catch (const std::exception&) {
        return "expected LOW:HIGH with numeric bounds";
      }
      return {};
    },
    "LOW:HIGH");

const auto kOverlapValidator = CLI::Validator(
    [](std::string& text) -> std::string {
      try {
        const double v = std::stod(text);
        if (!(v >= 0.0 && v < 1.0)) return "overlap must lie in [0, 1)";
      } catch (const std::exception&) {
        return "overlap must be a number";
      }
      return {};
    },
    "[0,1)");

void add_out(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out_dir, "Output directory (created if missing)")->required();
}
void add_plot(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--plot", cfg.plot, "Also write SVG figures (default: off)");
}
void add_threads(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--threads", cfg.threads, "Worker threads; outputs do not depend on it")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
}
void add_welch(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--welch-segment", cfg.welch_segment, "Welch segment length in samples (0: min(256, epoch length))")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--welch-overlap", cfg.welch_overlap, "Welch segment overlap fraction")
      ->check(kOverlapValidator)
      ->capture_default_str();
}
void add_band(CLI::App* cmd, RunConfig& cfg, const std::string& what) {
  cmd->add_option("--band", cfg.band_text, what + " (default 0.5:12)")->check(kBandValidator);
}
void add_downsample(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--downsample", cfg.downsample,
                  "Per-scale downsample factors d1,d2,... overriding the weights file (default: from file)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
}

std::vector<double> rescaled_or_raw(const std::vector<double>& values, const std::vector<double>& grid,
                                    const BandDefinition& band, bool& rescaled) {
  try {
    rescaled = true;
    return rescale_by_band_std(values, grid, band);
  } catch (const Error&) {
    rescaled = false;
    return values;
  }
}

plot::LinePlot band_plot(std::string title, std::string y_label) {
  plot::LinePlot p;
  p.title = std::move(title);
  p.y_label = std::move(y_label);
  p.shaded_bands = eeg_bands();
  return p;
}

FilterSpectrum load_spectrum(const RunConfig& cfg) {
  FilterBank bank = io::load_weights(cfg.weights_path);
  if (!cfg.downsample.empty()) bank = bank.with_downsample_factors(cfg.downsample);
  return retrieve_filter_spectrum(bank);
}

plot::Series spectrum_series(const FilterSpectrum& spectrum, const BandDefinition& band, bool& rescaled) {
  const auto grid = spectrum.grid.hz();
  return {"filter spectrum", grid, rescaled_or_raw(spectrum.amplitudes, grid, band, rescaled), false, "#000000"};
}

plot::Series bcv_series(const BCVSpectrum& bcv, const BandDefinition& band, bool& rescaled) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < bcv.frequencies_hz.size(); ++k) {
    if (!bcv.valid[k]) continue;
    x.push_back(bcv.frequencies_hz[k]);
    y.push_back(bcv.ratio[k]);
  }
  return {bcv.channel.name + " BCV", x, rescaled_or_raw(y, x, band, rescaled), true,
          plot::modality_color(bcv.channel.modality)};
}

void report_written(const std::vector<fs::path>& paths, std::ostream& out) {
  for (const auto& p : paths) out << "wrote " << p.string() << "\n";
}

int cmd_filter_spectrum(const RunConfig& cfg, std::ostream& out) {
  const FilterSpectrum spectrum = load_spectrum(cfg);
  io::ReportTables tables;
  tables.spectrum = spectrum;
  auto written = io::write_report(tables, cfg.out_dir);
  if (cfg.plot) {
    bool rescaled = false;
    auto p = band_plot("Filter spectrum: " + spectrum.model_label, "");
    p.series.push_back(spectrum_series(spectrum, cfg.band(), rescaled));
    p.y_label = rescaled ? "amplitude (rescaled)" : "amplitude";
    written.push_back(fs::path(cfg.out_dir) / "spectrum.svg");
    io::write_file(written.back(), plot::line_plot_svg(p));
  }
  report_written(written, out);
  return kOk;
}

int cmd_bcv(const RunConfig& cfg, std::ostream& out) {
  const EpochDataset dataset = io::load_dataset(cfg.manifest_path);
  io::ReportTables tables;
  tables.bcv = channel_bcv(dataset, cfg.welch(), StdKind::Population, cfg.threads);
  auto written = io::write_report(tables, cfg.out_dir);
  if (cfg.plot) {
    for (const auto& bcv : tables.bcv) {
      bool rescaled = false;
      auto p = band_plot("Between-class spectral variation: " + bcv.channel.name, "");
      p.series.push_back(bcv_series(bcv, cfg.band(), rescaled));
      p.y_label = rescaled ? "BCV (rescaled)" : "BCV";
      written.push_back(fs::path(cfg.out_dir) / ("bcv_" + io::channel_file_stem(bcv.channel.name) + ".svg"));
      io::write_file(written.back(), plot::line_plot_svg(p));
    }
  }
  report_written(written, out);
  return kOk;
}

int cmd_correlate(const RunConfig& cfg, std::ostream& out) {
  const FilterSpectrum spectrum = load_spectrum(cfg);
  const EpochDataset dataset = io::load_dataset(cfg.manifest_path);
  std::optional<std::map<std::string, double>> accuracies;
  if (!cfg.accuracies_path.empty()) accuracies = io::load_accuracies(cfg.accuracies_path);

  const auto bcvs = channel_bcv(dataset, cfg.welch(), StdKind::Population, cfg.threads);
  const BandDefinition band = cfg.band();
  CorrelationReport report = channel_correlations(spectrum, bcvs, band);
  report.dataset_label = dataset.label();

  io::ReportTables tables;
  tables.correlation_footer = {
      {"band_hz", io::format_number(band.low_hz) + ":" + io::format_number(band.high_hz)},
      {"model", report.model_label},
      {"dataset", report.dataset_label},
  };
  if (accuracies) {
    tables.correlation_footer.emplace_back("spearman_rho", io::format_number(rank_agreement(report, *accuracies)));
  }
  tables.correlations = report;
  auto written = io::write_report(tables, cfg.out_dir);

  if (cfg.plot) {
    std::vector<plot::Bar> bars;
    for (const auto& row : report.channels) {
      bars.push_back({row.channel.name, row.pearson_r, plot::modality_color(row.channel.modality)});
    }
    written.push_back(fs::path(cfg.out_dir) / "correlations.svg");
    io::write_file(written.back(), plot::bar_plot_svg("Filter spectrum vs. BCV, Pearson r", "Pearson r", bars));

    bool rescaled = false;
    auto p = band_plot("Filter spectrum and between-class variation", "rescaled amplitude");
    p.series.push_back(spectrum_series(spectrum, band, rescaled));
    for (const auto& bcv : bcvs) p.series.push_back(bcv_series(bcv, band, rescaled));
    written.push_back(fs::path(cfg.out_dir) / "overlay.svg");
    io::write_file(written.back(), plot::line_plot_svg(p));
  }

  for (const auto& row : report.channels) {
    out << row.channel.name << " (" << to_string(row.channel.modality) << "): r = " << io::format_number(row.pearson_r)
        << " [" << to_string(row.status) << "]\n";
  }
  report_written(written, out);
  return kOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  fs::path written;
  std::string digest;
  if (cfg.fixture_kind == "two-class") {
    const EpochDataset dataset = synth::gen_two_class_dataset(synth::two_class_fixture_config(cfg.seed), "two-class");
    written = io::save_dataset(dataset, dir, "two-class");
    digest = io::fnv1a64_hex(io::serialize_payload(dataset));
  } else {
    const FilterBank bank =
        cfg.fixture_kind == "eegnet-like" ? synth::eegnet_like_bank(cfg.seed) : synth::msacnn_like_bank(cfg.seed);
    written = dir / (cfg.fixture_kind + ".weights.json");
    const std::string text = io::serialize_weights(bank);
    io::write_file(written, text);
    digest = io::fnv1a64_hex(text);
  }
  out << "wrote " << written.string() << " fnv1a64=" << digest << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filter spectrum retrieval and between-class spectral variation analysis", "filterscope"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("filter-spectrum", "Unified filter amplitude spectrum from a weights file");
  spectrum->add_option("weights", cfg.weights_path, "Weights file (.weights.json)")->required();
  add_out(spectrum, cfg);
  add_plot(spectrum, cfg);
  add_threads(spectrum, cfg);
  add_band(spectrum, cfg, "Rescaling band for the plot");
  add_downsample(spectrum, cfg);

  auto* bcv = app.add_subcommand("bcv", "Between-class spectral variation per channel");
  bcv->add_option("manifest", cfg.manifest_path, "Dataset manifest (.manifest.json)")->required();
  add_out(bcv, cfg);
  add_plot(bcv, cfg);
  add_threads(bcv, cfg);
  add_welch(bcv, cfg);
  add_band(bcv, cfg, "Rescaling band for plots");

  auto* correlate = app.add_subcommand("correlate", "Per-channel correlation of filter spectrum and BCV");
  correlate->add_option("weights", cfg.weights_path, "Weights file (.weights.json)")->required();
  correlate->add_option("manifest", cfg.manifest_path, "Dataset manifest (.manifest.json)")->required();
  correlate->add_option("--accuracies", cfg.accuracies_path, "Per-channel accuracy table (channel,accuracy)");
  add_out(correlate, cfg);
  add_plot(correlate, cfg);
  add_threads(correlate, cfg);
  add_welch(correlate, cfg);
  add_band(correlate, cfg, "Correlation band");
  add_downsample(correlate, cfg);

  auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic fixture");
  synth_cmd->add_option("kind", cfg.fixture_kind, "Fixture kind")
      ->required()
      ->check(CLI::IsMember({"eegnet-like", "msacnn-like", "two-class"}));
  synth_cmd->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  add_out(synth_cmd, cfg);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*spectrum) return cmd_filter_spectrum(cfg, out);
    if (*bcv) return cmd_bcv(cfg, out);
    if (*correlate) return cmd_correlate(cfg, out);
    if (*synth_cmd) return cmd_synth(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InternalConsistency ? kInternal : kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace filterscope::cli
