#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkoid/closure.hpp"
#include "linkoid/curves3d.hpp"
#include "linkoid/diagram.hpp"
#include "linkoid/errors.hpp"
#include "linkoid/invariants.hpp"
#include "linkoid/involution.hpp"
#include "linkoid/polynomial.hpp"
#include "linkoid/spectrum.hpp"

using nlohmann::ordered_json;

namespace {

ordered_json estimate_json(const linkoid::MeasureEstimate& m) {
  ordered_json j;
  j["samples"] = m.samples;
  j["rejected"] = m.rejected;
  j["seed"] = m.seed;
  j["scalar"] = m.scalar;
  j["mean"] = m.mean;
  j["sem"] = m.sem;
  if (!m.dump.empty()) j["samples_dump"] = m.dump;
  return j;
}

ordered_json report_json(const linkoid::InvariantReport& r) {
  ordered_json j;
  j["sigma"] = r.sigma.str();
  j["component_count"] = r.component_count;
  j["writhe"] = r.writhe;
  j["bracket"] = r.bracket.str();
  j["jones"] = r.jones.str();
  j["arrow"] = r.arrow.str();
  if (r.affine) {
    ordered_json a;
    a["poly"] = r.affine->poly.str();
    ordered_json w;
    for (const auto& [id, wk] : r.affine->weights) w[std::to_string(id)] = wk;
    a["weights"] = w;
    j["affine"] = a;
  } else {
    j["affine"] = nullptr;
  }
  if (r.odd_writhe) {
    ordered_json o;
    o["value"] = r.odd_writhe->value;
    o["odd_crossings"] = r.odd_writhe->odd_crossings;
    j["odd_writhe"] = o;
  } else {
    j["odd_writhe"] = nullptr;
  }
  j["height_bound"] = r.height_bound;
  j["genus_bound"] = r.genus_bound;
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_escape(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linkoid: invariants of open-ended link diagrams and their "
               "virtual closures"};
  app.require_subcommand(1);

  std::string path, sigma_text, invariant, mode = "deduped";
  int samples = 1000, threads = 1, max_crossings = 0, enum_n = 0;
  std::uint64_t seed = 1;
  bool csv = false, json_out = false, dump = false;

  auto add_input = [&](CLI::App* s, const char* what) {
    s->add_option("input", path, what)->required();
  };
  auto add_sigma = [&](CLI::App* s) {
    s->add_option("--sigma", sigma_text, "closure involution in cycle notation")
        ->required();
  };
  auto add_compute = [&](CLI::App* s) {
    s->add_option("--max-crossings", max_crossings,
                  "state-sum crossing limit override");
    s->add_option("--threads", threads, "worker thread cap");
  };
  auto add_sampling = [&](CLI::App* s) {
    s->add_option("--samples", samples, "Monte Carlo sample count");
    s->add_option("--seed", seed, "RNG seed");
    s->add_flag("--dump-samples", dump, "emit raw per-direction values");
  };
  auto add_format = [&](CLI::App* s) {
    s->add_flag("--json", json_out, "JSON output (default)");
    s->add_flag("--csv", csv, "CSV output");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "check a diagram file");
  add_input(c_validate, "diagram file");

  CLI::App* c_inv = app.add_subcommand("invariants",
                                       "full invariant report for one sigma");
  add_input(c_inv, "diagram file");
  add_sigma(c_inv);
  add_compute(c_inv);

  CLI::App* c_closure = app.add_subcommand("closure",
                                           "virtual closure for one sigma");
  add_input(c_closure, "diagram file");
  add_sigma(c_closure);

  CLI::App* c_spec = app.add_subcommand("spectrum",
                                        "reports over every sigma in H_n");
  add_input(c_spec, "diagram file");
  c_spec->add_option("--mode", mode, "deduped or multiset");
  c_spec->add_option("--invariant", invariant,
                     "selector for values, average and minimum");
  add_compute(c_spec);
  add_format(c_spec);

  CLI::App* c_measure = app.add_subcommand(
      "measure", "Monte Carlo closure invariant of 3-space curves");
  add_input(c_measure, "curves file");
  add_sigma(c_measure);
  c_measure->add_option("--invariant", invariant, "selector")->required();
  add_sampling(c_measure);
  add_compute(c_measure);

  CLI::App* c_wspec = app.add_subcommand(
      "weighted-spectrum", "per-sigma measures with endpoint-distance weights");
  add_input(c_wspec, "curves file");
  c_wspec->add_option("--invariant", invariant, "selector")->required();
  add_sampling(c_wspec);
  add_compute(c_wspec);
  add_format(c_wspec);

  CLI::App* c_smeasure = app.add_subcommand(
      "spectral-measure", "weighted sum of closure measures over H_n");
  add_input(c_smeasure, "curves file");
  c_smeasure->add_option("--invariant", invariant, "selector")->required();
  add_sampling(c_smeasure);
  add_compute(c_smeasure);

  CLI::App* c_enum = app.add_subcommand("enum-involutions",
                                        "list H_n in cycle notation");
  c_enum->add_option("n", enum_n, "strand count")->required();

  CLI::App* c_excise = app.add_subcommand(
      "excise", "cut a closed virtual diagram back to a linkoid");
  add_input(c_excise, "diagram file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    linkoid::StateSumOptions ss = linkoid::default_state_sum_options();
    if (max_crossings > 0) ss.max_crossings = max_crossings;
    ss.threads = threads;

    if (c_validate->parsed()) {
      linkoid::PlanarDiagram d = linkoid::load_diagram_file(path);
      std::vector<std::string> errs = d.validate();
      if (!errs.empty()) {
        std::string what = "invalid diagram";
        for (const std::string& e : errs) what += "; " + e;
        throw linkoid::InvalidDiagram(what);
      }
      ordered_json j;
      j["ok"] = true;
      j["strands"] = d.strands.size();
      j["free_loops"] = d.free_loops;
      j["classical_count"] = d.classical_count();
      j["virtual_count"] = d.virtual_count();
      j["endpoint_count"] = d.endpoint_count();
      j["closed"] = d.is_closed();
      if (d.is_closed())
        j["tau"] = nullptr;
      else
        j["tau"] = d.strand_permutation().str();
      emit(j);
    } else if (c_inv->parsed()) {
      linkoid::PlanarDiagram d = linkoid::load_diagram_file(path);
      linkoid::Involution sig = linkoid::Involution::parse(sigma_text);
      emit(report_json(linkoid::report(d, sig, ss)));
    } else if (c_closure->parsed()) {
      linkoid::PlanarDiagram d = linkoid::load_diagram_file(path);
      linkoid::Involution sig = linkoid::Involution::parse(sigma_text);
      linkoid::ClosedVirtualDiagram cv = linkoid::virtual_closure(d, sig);
      linkoid::ClosedVirtualDiagram red = linkoid::reduce_virtual(cv);
      ordered_json j;
      j["sigma"] = sig.str();
      j["virtual_count"] = cv.virtual_count;
      j["component_count"] = cv.component_count;
      j["reduced_virtual_count"] = red.virtual_count;
      j["is_link_type"] = red.virtual_count == 0;
      try {
        j["canonical_code"] = linkoid::canonical_closed_code(red.diagram);
      } catch (const linkoid::TooLarge&) {
        j["canonical_code"] = nullptr;
      }
      j["diagram"] = ordered_json::parse(linkoid::serialize_diagram(cv.diagram));
      emit(j);
    } else if (c_spec->parsed()) {
      linkoid::PlanarDiagram d = linkoid::load_diagram_file(path);
      linkoid::SpectrumMode m;
      if (mode == "deduped")
        m = linkoid::SpectrumMode::Deduped;
      else if (mode == "multiset")
        m = linkoid::SpectrumMode::Multiset;
      else
        throw linkoid::Error("unknown mode: " + mode);
      linkoid::Spectrum s = linkoid::virtual_spectrum(d, m, ss);
      if (csv) {
        std::cout << "sigma,class_size,component_count,writhe,height_bound,"
                     "genus_bound,odd_writhe,jones,arrow\n";
        for (const linkoid::SpectrumEntry& e : s.entries) {
          std::cout << csv_escape(e.sigma.str()) << "," << e.klass.size() << ","
                    << e.rep.component_count << "," << e.rep.writhe << ","
                    << e.rep.height_bound << "," << e.rep.genus_bound << ",";
          if (e.rep.odd_writhe) std::cout << e.rep.odd_writhe->value;
          std::cout << "," << csv_escape(e.rep.jones.str()) << ","
                    << csv_escape(e.rep.arrow.str()) << "\n";
        }
      } else {
        ordered_json j;
        j["n"] = s.n;
        j["mode"] = mode;
        ordered_json entries = ordered_json::array();
        for (const linkoid::SpectrumEntry& e : s.entries) {
          ordered_json je = report_json(e.rep);
          ordered_json klass = ordered_json::array();
          for (const linkoid::Involution& k : e.klass) klass.push_back(k.str());
          je["class"] = klass;
          je["fingerprint"] = e.fingerprint;
          entries.push_back(je);
        }
        j["entries"] = entries;
        if (!invariant.empty()) {
          linkoid::Selector f = linkoid::parse_selector(invariant);
          ordered_json sel;
          sel["name"] = invariant;
          ordered_json vals = ordered_json::array();
          for (const linkoid::SpectralValue& v :
               linkoid::spectral_values(s, f))
            vals.push_back(v.defined ? ordered_json(v.text) : ordered_json());
          sel["values"] = vals;
          try {
            sel["avg"] = linkoid::avg_spectral(s, f).str();
          } catch (const linkoid::EmptyList&) {
            sel["avg"] = nullptr;
          }
          if (f != linkoid::Selector::Jones && f != linkoid::Selector::Arrow) {
            try {
              sel["min"] = linkoid::min_spectral(s, f);
            } catch (const linkoid::EmptyList&) {
              sel["min"] = nullptr;
            }
          }
          j["selector"] = sel;
        }
        emit(j);
      }
    } else if (c_measure->parsed()) {
      linkoid::PolyCurveSet c = linkoid::load_curves_file(path);
      linkoid::Involution sig = linkoid::Involution::parse(sigma_text);
      linkoid::Selector f = linkoid::parse_selector(invariant);
      linkoid::SampleOptions so;
      so.samples = samples;
      so.seed = seed;
      so.threads = threads;
      so.dump_samples = dump;
      so.statesum = ss;
      so.statesum.threads = 1;
      linkoid::MeasureEstimate m = linkoid::measure(c, sig, f, so);
      ordered_json j;
      j["selector"] = invariant;
      j["sigma"] = sig.str();
      j.update(estimate_json(m));
      emit(j);
    } else if (c_wspec->parsed()) {
      linkoid::PolyCurveSet c = linkoid::load_curves_file(path);
      linkoid::Selector f = linkoid::parse_selector(invariant);
      linkoid::SampleOptions so;
      so.samples = samples;
      so.seed = seed;
      so.threads = threads;
      so.dump_samples = dump;
      so.statesum = ss;
      so.statesum.threads = 1;
      linkoid::WeightedSpectrum ws = linkoid::weighted_spectrum(c, f, so);
      if (csv) {
        std::cout << "sigma,weight,key,mean,sem\n";
        char buf[64];
        for (const linkoid::WeightedEntry& e : ws.entries)
          for (const auto& [k, v] : e.estimate.mean) {
            std::cout << csv_escape(e.sigma.str()) << ",";
            std::snprintf(buf, sizeof buf, "%.17g", e.weight);
            std::cout << buf << "," << csv_escape(k) << ",";
            std::snprintf(buf, sizeof buf, "%.17g", v);
            std::cout << buf << ",";
            std::snprintf(buf, sizeof buf, "%.17g", e.estimate.sem.at(k));
            std::cout << buf << "\n";
          }
      } else {
        ordered_json j;
        j["selector"] = invariant;
        j["w_min"] = ws.w_min;
        ordered_json entries = ordered_json::array();
        for (const linkoid::WeightedEntry& e : ws.entries) {
          ordered_json je;
          je["sigma"] = e.sigma.str();
          je["weight"] = e.weight;
          je["estimate"] = estimate_json(e.estimate);
          entries.push_back(je);
        }
        j["entries"] = entries;
        emit(j);
      }
    } else if (c_smeasure->parsed()) {
      linkoid::PolyCurveSet c = linkoid::load_curves_file(path);
      linkoid::Selector f = linkoid::parse_selector(invariant);
      linkoid::SampleOptions so;
      so.samples = samples;
      so.seed = seed;
      so.threads = threads;
      so.dump_samples = dump;
      so.statesum = ss;
      so.statesum.threads = 1;
      linkoid::MeasureEstimate m = linkoid::spectral_measure(c, f, so);
      ordered_json j;
      j["selector"] = invariant;
      j.update(estimate_json(m));
      emit(j);
    } else if (c_enum->parsed()) {
      for (const linkoid::Involution& s : linkoid::enumerate_Hn(enum_n))
        std::cout << s.str() << "\n";
    } else if (c_excise->parsed()) {
      linkoid::PlanarDiagram d = linkoid::load_diagram_file(path);
      auto [open, sig] = linkoid::excise_virtual(d);
      ordered_json j;
      j["sigma"] = sig.str();
      j["diagram"] = ordered_json::parse(linkoid::serialize_diagram(open));
      emit(j);
    }
    return 0;
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = e.what();
    emit(err);
    return 1;
  }
}
