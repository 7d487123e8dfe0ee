// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through plcvlc.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plcvlc.h"

namespace {

struct Options {
  std::string config_path;
  std::string sweep;
  std::optional<std::uint64_t> mc_trials;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::optional<int> quad_order;
};

struct ConfigHandle {
  plcvlc_config* ptr = nullptr;
  ~ConfigHandle() { plcvlc_config_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { plcvlc_string_free(ptr); }
};

int report(plcvlc_status st) {
  if (st != PLCVLC_OK) std::cerr << "plcvlc: " << plcvlc_last_error() << "\n";
  return static_cast<int>(st);
}

int emit(const Options& opt, const char* text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return PLCVLC_OK;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "plcvlc: cannot write '" << opt.out_path << "'\n";
    return PLCVLC_ERR_IO;
  }
  return PLCVLC_OK;
}

plcvlc_status load(const Options& opt, ConfigHandle& cfg) {
  plcvlc_status st = opt.config_path.empty() ? plcvlc_config_new(&cfg.ptr)
                                             : plcvlc_config_load_file(opt.config_path.c_str(), &cfg.ptr);
  if (st != PLCVLC_OK) return st;
  if (opt.mc_trials) {
    st = plcvlc_config_set(cfg.ptr, "mc.trials", std::to_string(*opt.mc_trials).c_str());
    if (st != PLCVLC_OK) return st;
  }
  if (opt.seed) {
    st = plcvlc_config_set(cfg.ptr, "mc.seed", std::to_string(*opt.seed).c_str());
    if (st != PLCVLC_OK) return st;
  }
  if (opt.quad_order) {
    st = plcvlc_config_set(cfg.ptr, "cascade.quad_order", std::to_string(*opt.quad_order).c_str());
    if (st != PLCVLC_OK) return st;
  }
  if (!opt.sweep.empty()) st = plcvlc_config_set_sweep(cfg.ptr, opt.sweep.c_str());
  return st;
}

int run_metric(const Options& opt, plcvlc_metric metric) {
  ConfigHandle cfg;
  if (auto st = load(opt, cfg); st != PLCVLC_OK) return report(st);
  OwnedString csv;
  const plcvlc_status st = plcvlc_run_metric(cfg.ptr, metric, opt.mc_trials ? 1 : 0, &csv.ptr);
  if (csv.ptr) {
    if (int io = emit(opt, csv.ptr); io != PLCVLC_OK) return io;
  }
  return report(st);
}

int run_fit(const Options& opt) {
  ConfigHandle cfg;
  if (auto st = load(opt, cfg); st != PLCVLC_OK) return report(st);
  OwnedString text;
  if (auto st = plcvlc_fit_report(cfg.ptr, &text.ptr); st != PLCVLC_OK) return report(st);
  return emit(opt, text.ptr);
}

int run_validate(const Options& opt) {
  ConfigHandle cfg;
  if (auto st = load(opt, cfg); st != PLCVLC_OK) return report(st);
  OwnedString csv;
  const plcvlc_status st = plcvlc_validate(cfg.ptr, &csv.ptr);
  if (csv.ptr) {
    if (int io = emit(opt, csv.ptr); io != PLCVLC_OK) return io;
  }
  return report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded PLC/VLC link analysis: outage, BEP, capacity sweeps and MC validation"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool sweepable) {
    sub->add_option("--config", opt.config_path, "Config file (section.key = value)");
    if (sweepable)
      sub->add_option("--sweep", opt.sweep, "var:start:stop:points[:log]");
    sub->add_option("--mc", opt.mc_trials, "Monte Carlo trials (enables the MC columns)");
    sub->add_option("--seed", opt.seed, "Monte Carlo seed");
    sub->add_option("--out", opt.out_path, "Output path (default: stdout)");
    sub->add_option("--quad-order", opt.quad_order, "Gauss-Legendre order");
  };

  auto* op = app.add_subcommand("op", "Outage probability sweep");
  auto* bep = app.add_subcommand("bep", "Average bit-error probability sweep");
  auto* cap = app.add_subcommand("capacity", "Ergodic capacity sweep");
  auto* fit = app.add_subcommand("fit", "Lognormal-sum fit report");
  auto* val = app.add_subcommand("validate", "Analytic-vs-MC scenario set");
  add_common(op, true);
  add_common(bep, true);
  add_common(cap, true);
  add_common(fit, false);
  add_common(val, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PLCVLC_ERR_PARSE;
  }

  if (op->parsed()) return run_metric(opt, PLCVLC_METRIC_OP);
  if (bep->parsed()) return run_metric(opt, PLCVLC_METRIC_BEP);
  if (cap->parsed()) return run_metric(opt, PLCVLC_METRIC_CAPACITY);
  if (fit->parsed()) return run_fit(opt);
  return run_validate(opt);
}
