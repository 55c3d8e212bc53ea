// endslab: batch CLI for large-scale invariants of locally finite spaces.
// Exit codes: 0 success, 1 negative verdict, 2 input error, 3 resource cap.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "endslab/coarse_core.hpp"
#include "endslab/components.hpp"
#include "endslab/epsilon.hpp"
#include "endslab/maps.hpp"
#include "endslab/sequence.hpp"
#include "endslab/sigma_witness.hpp"
#include "endslab/space.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

// Inline JSON when the argument looks like it, file contents otherwise.
std::string read_payload(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw endslab::InputError("cannot open file '" + arg + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw endslab::InputError("cannot write file '" + out_path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
}

void emit_json(const nlohmann::ordered_json& j, const std::string& out_path) {
  emit(j.dump(2), out_path);
}

struct CommonOpts {
  std::string format = "json";
  std::string out;
  std::size_t cap = 0;  // 0: default / ENDSLAB_CAP

  endslab::Limits limits() const {
    endslab::Limits lims;
    if (cap) {
      lims.point_cap = cap;
    } else if (const char* env = std::getenv("ENDSLAB_CAP")) {
      lims.point_cap = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
      if (lims.point_cap == 0) throw endslab::InputError("ENDSLAB_CAP must be a positive integer");
    }
    return lims;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts,
                const std::vector<std::string>& formats = {}) {
  if (!formats.empty()) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember(formats));
  }
  cmd->add_option("--out", opts.out, "Write output to a file instead of stdout");
  cmd->add_option("--cap", opts.cap, "Point cap override (also: ENDSLAB_CAP)");
}

endslab::PointId pick_xi(const endslab::Space& space, const std::string& xi_flag) {
  if (xi_flag.empty()) return space.basepoint();
  space.check_point(xi_flag);
  return xi_flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"endslab: ends, component threads and coarse-sequence equivalence "
               "for lazily generated locally finite spaces"};
  app.require_subcommand(1);

  // ---- spaces ----
  struct {
    std::string space;
    CommonOpts common;
  } spaces_opts;
  auto* cmd_spaces = app.add_subcommand("spaces", "Validate a space descriptor");
  cmd_spaces->add_option("--space", spaces_opts.space, "Descriptor (inline JSON or file)")
      ->required();
  add_common(cmd_spaces, spaces_opts.common);

  // ---- ball ----
  struct {
    std::string space, center;
    endslab::Dist r = 0;
    CommonOpts common;
  } ball_opts;
  auto* cmd_ball = app.add_subcommand("ball", "Enumerate the ball B(center; r) as a window");
  cmd_ball->add_option("--space", ball_opts.space)->required();
  cmd_ball->add_option("--center", ball_opts.center, "Center point (default: basepoint)");
  cmd_ball->add_option("--r", ball_opts.r, "Radius")->required();
  add_common(cmd_ball, ball_opts.common);

  // ---- components ----
  struct {
    std::string space, window, xi;
    endslab::Dist r = 0, k = 1, margin = 0;
    bool members = false;
    CommonOpts common;
  } comp_opts;
  auto* cmd_comp = app.add_subcommand("components", "K-components outside B(xi; r)");
  cmd_comp->add_option("--space", comp_opts.space, "Space descriptor");
  cmd_comp->add_option("--window", comp_opts.window, "Window JSON (alternative to --space)");
  cmd_comp->add_option("--xi", comp_opts.xi);
  cmd_comp->add_option("--r", comp_opts.r, "Forbidden radius")->required();
  cmd_comp->add_option("--K", comp_opts.k, "Hop threshold");
  cmd_comp->add_option("--margin", comp_opts.margin, "Horizon margin (default 2K+4)");
  cmd_comp->add_flag("--members", comp_opts.members, "List class members");
  add_common(cmd_comp, comp_opts.common);

  // ---- ends ----
  struct {
    std::string space, xi;
    endslab::Dist k = 1, margin = 0;
    int rmax = 16;
    CommonOpts common;
  } ends_opts;
  auto* cmd_ends = app.add_subcommand("ends", "Live component counts for r = 1..rmax");
  cmd_ends->add_option("--space", ends_opts.space)->required();
  cmd_ends->add_option("--xi", ends_opts.xi);
  cmd_ends->add_option("--K", ends_opts.k);
  cmd_ends->add_option("--rmax", ends_opts.rmax)->required();
  cmd_ends->add_option("--margin", ends_opts.margin);
  add_common(cmd_ends, ends_opts.common, {"json", "csv"});

  // ---- threads ----
  struct {
    std::string space, xi;
    endslab::Dist k = 1, margin = 0;
    int rmax = 8;
    bool members = false;
    CommonOpts common;
  } threads_opts;
  auto* cmd_threads = app.add_subcommand("threads", "Component thread system up to rmax");
  cmd_threads->add_option("--space", threads_opts.space)->required();
  cmd_threads->add_option("--xi", threads_opts.xi);
  cmd_threads->add_option("--K", threads_opts.k);
  cmd_threads->add_option("--rmax", threads_opts.rmax)->required();
  cmd_threads->add_option("--margin", threads_opts.margin);
  cmd_threads->add_flag("--members", threads_opts.members);
  add_common(cmd_threads, threads_opts.common, {"json", "dot"});

  // ---- eps ----
  struct {
    std::string space, xi, s, t;
    endslab::Dist k = 1, kmax = 0, margin = 0;
    int rmax = 16;
    std::size_t prefix = 0;
    bool verify = false;
    CommonOpts common;
  } eps_opts;
  auto* cmd_eps = app.add_subcommand("eps", "Epsilon-equivalence with certificate or refutation");
  cmd_eps->add_option("--space", eps_opts.space)->required();
  cmd_eps->add_option("--xi", eps_opts.xi);
  cmd_eps->add_option("--s", eps_opts.s, "First sequence (JSON or file)")->required();
  cmd_eps->add_option("--t", eps_opts.t, "Second sequence")->required();
  cmd_eps->add_option("--K", eps_opts.k, "Fixed hop threshold");
  cmd_eps->add_option("--Kmax", eps_opts.kmax, "Search K = 1..Kmax for the minimal certificate");
  cmd_eps->add_option("--rmax", eps_opts.rmax)->required();
  cmd_eps->add_option("--margin", eps_opts.margin);
  cmd_eps->add_option("--prefix", eps_opts.prefix, "Working prefix length");
  cmd_eps->add_flag("--verify", eps_opts.verify,
                    "Re-check the certificate independently before exiting");
  add_common(cmd_eps, eps_opts.common);

  // ---- witness ----
  struct {
    std::string certificate;
    int rprobe = -1;
    CommonOpts common;
  } wit_opts;
  auto* cmd_wit = app.add_subcommand("witness",
                                     "Build the concatenation witness from a certificate");
  cmd_wit->add_option("--certificate", wit_opts.certificate, "Certificate JSON or file")
      ->required();
  cmd_wit->add_option("--rprobe", wit_opts.rprobe, "Properness probe radius (default r_max)");
  add_common(cmd_wit, wit_opts.common);

  // ---- map-check ----
  struct {
    std::string map;
    endslab::Dist probe = 4, kin = 1;
    CommonOpts common;
  } mc_opts;
  auto* cmd_mc = app.add_subcommand("map-check", "Probe a map for coarseness");
  cmd_mc->add_option("--map", mc_opts.map)->required();
  cmd_mc->add_option("--probe", mc_opts.probe);
  cmd_mc->add_option("--Kin", mc_opts.kin);
  add_common(cmd_mc, mc_opts.common);

  // ---- map-close ----
  struct {
    std::string f, g;
    endslab::Dist probe = 4;
    CommonOpts common;
  } close_opts;
  auto* cmd_close = app.add_subcommand("map-close", "Closeness of two maps");
  cmd_close->add_option("--f", close_opts.f)->required();
  cmd_close->add_option("--g", close_opts.g)->required();
  cmd_close->add_option("--probe", close_opts.probe);
  add_common(cmd_close, close_opts.common);

  // ---- map-ends ----
  struct {
    std::string f;
    endslab::Dist k = 1, margin = 0;
    int rmax = 6;
    CommonOpts common;
  } me_opts;
  auto* cmd_me = app.add_subcommand("map-ends", "Induced map on component threads");
  cmd_me->add_option("--f", me_opts.f)->required();
  cmd_me->add_option("--K", me_opts.k);
  cmd_me->add_option("--rmax", me_opts.rmax);
  cmd_me->add_option("--margin", me_opts.margin);
  add_common(cmd_me, me_opts.common);

  // ---- verify ----
  struct {
    std::string certificate, witness;
    int rprobe = -1;
    CommonOpts common;
  } ver_opts;
  auto* cmd_ver = app.add_subcommand("verify", "Independently re-check a certificate or witness");
  cmd_ver->add_option("--certificate", ver_opts.certificate);
  cmd_ver->add_option("--witness", ver_opts.witness);
  cmd_ver->add_option("--rprobe", ver_opts.rprobe);
  add_common(cmd_ver, ver_opts.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (cmd_spaces->parsed()) {
      auto lims = spaces_opts.common.limits();
      auto space = endslab::Space::parse(read_payload(spaces_opts.space), lims);
      nlohmann::ordered_json j;
      j["ok"] = true;
      j["space"] = space.descriptor_json();
      j["basepoint_degree"] = space.neighbors(space.basepoint()).size();
      emit_json(j, spaces_opts.common.out);
      return kExitOk;
    }

    if (cmd_ball->parsed()) {
      auto lims = ball_opts.common.limits();
      auto space = endslab::Space::parse(read_payload(ball_opts.space), lims);
      auto center = pick_xi(space, ball_opts.center);
      auto w = endslab::ball(space, center, ball_opts.r, lims);
      emit(w.to_json_string(2), ball_opts.common.out);
      return kExitOk;
    }

    if (cmd_comp->parsed()) {
      auto lims = comp_opts.common.limits();
      endslab::Dist k = comp_opts.k;
      std::optional<endslab::Window> w;
      if (!comp_opts.window.empty()) {
        w = endslab::Window::from_json_string(read_payload(comp_opts.window));
      } else if (!comp_opts.space.empty()) {
        auto space = endslab::Space::parse(read_payload(comp_opts.space), lims);
        auto xi = pick_xi(space, comp_opts.xi);
        endslab::Dist margin = comp_opts.margin > 0 ? comp_opts.margin : 2 * k + 4;
        w = endslab::ball(space, xi, comp_opts.r + margin, lims);
      } else {
        throw endslab::InputError("components: provide --space or --window");
      }
      auto part = endslab::k_components(*w, {w->origin(), comp_opts.r}, k);
      emit_json(endslab::partition_to_json(*w, part, comp_opts.members), comp_opts.common.out);
      return kExitOk;
    }

    if (cmd_ends->parsed()) {
      auto lims = ends_opts.common.limits();
      auto space = endslab::Space::parse(read_payload(ends_opts.space), lims);
      auto xi = pick_xi(space, ends_opts.xi);
      endslab::Dist margin = ends_opts.margin > 0 ? ends_opts.margin : 2 * ends_opts.k + 4;
      auto profile = endslab::end_profile(space, xi, ends_opts.k, ends_opts.rmax, margin, lims);
      if (ends_opts.common.format == "csv") {
        emit(endslab::profile_to_csv(profile), ends_opts.common.out);
      } else {
        emit_json(endslab::profile_to_json(space, xi, profile), ends_opts.common.out);
      }
      return kExitOk;
    }

    if (cmd_threads->parsed()) {
      auto lims = threads_opts.common.limits();
      auto space = endslab::Space::parse(read_payload(threads_opts.space), lims);
      auto xi = pick_xi(space, threads_opts.xi);
      endslab::Dist margin = threads_opts.margin > 0 ? threads_opts.margin : 2 * threads_opts.k + 4;
      auto ts = endslab::component_threads(space, xi, threads_opts.k, threads_opts.rmax, margin,
                                           lims);
      if (threads_opts.common.format == "dot") {
        emit(endslab::threads_to_dot(ts), threads_opts.common.out);
      } else {
        emit_json(endslab::threads_to_json(space, xi, ts, threads_opts.members),
                  threads_opts.common.out);
      }
      return kExitOk;
    }

    if (cmd_eps->parsed()) {
      auto lims = eps_opts.common.limits();
      auto space = endslab::Space::parse(read_payload(eps_opts.space), lims);
      auto xi = pick_xi(space, eps_opts.xi);
      auto s = endslab::sequence_from_string(read_payload(eps_opts.s));
      auto t = endslab::sequence_from_string(read_payload(eps_opts.t));
      endslab::EpsParams params;
      params.k = eps_opts.k;
      params.r_max = eps_opts.rmax;
      params.margin = eps_opts.margin > 0 ? eps_opts.margin : 2 * eps_opts.k + 4;
      params.prefix_len = eps_opts.prefix;
      params.limits = lims;

      // precondition: declared step bounds must hold on the working prefix
      std::size_t check_len = params.prefix_len
                                  ? params.prefix_len
                                  : 2 * static_cast<std::size_t>(params.r_max + params.margin) + 16;
      for (const auto& [label, sq] : {std::pair<const char*, const endslab::CoarseSequence&>{"s", s},
                                      {"t", t}}) {
        auto report = endslab::validate_coarse(space, xi, sq, check_len, 0);
        if (!report.bornologous_ok) {
          throw endslab::InputError(std::string("eps: sequence ") + label + " breaks its declared "
                                    "step bound at index " + std::to_string(report.first_violation));
        }
      }

      endslab::EpsOutcome outcome;
      if (eps_opts.kmax > 0) {
        auto search = endslab::epsilon_search_k(space, xi, s, t, eps_opts.kmax, params);
        outcome = std::move(search.outcome);
      } else {
        outcome = endslab::epsilon_equivalent(space, xi, s, t, params);
      }
      if (outcome.equivalent()) {
        emit_json(endslab::certificate_to_json(space, xi, s, t, *outcome.certificate),
                  eps_opts.common.out);
        if (eps_opts.verify) {
          auto report = endslab::verify_certificate(space, xi, s, t, *outcome.certificate, lims);
          for (const auto& issue : report.issues) std::cerr << "verify: " << issue << "\n";
          std::cerr << "verification: " << (report.ok ? "ok" : "FAILED") << "\n";
          if (!report.ok) return kExitNegative;
        }
        return kExitOk;
      }
      emit_json(endslab::refutation_to_json(space, xi, s, t, *outcome.refutation),
                eps_opts.common.out);
      return kExitNegative;
    }

    if (cmd_wit->parsed()) {
      auto lims = wit_opts.common.limits();
      auto file = endslab::certificate_from_json(
          nlohmann::json::parse(read_payload(wit_opts.certificate)), lims);
      auto witness = endslab::build_witness(file.space, file.xi, file.s, file.t, file.cert);
      endslab::Dist rprobe = wit_opts.rprobe >= 0 ? wit_opts.rprobe : file.cert.r_max;
      auto report = endslab::verify_witness(file.space, file.xi, file.s, file.t, witness, rprobe);
      auto j = endslab::witness_to_json(file.space, file.xi, file.s, file.t, witness);
      j["verification"] = endslab::witness_report_to_json(report);
      emit_json(j, wit_opts.common.out);
      return report.ok() ? kExitOk : kExitNegative;
    }

    if (cmd_mc->parsed()) {
      auto lims = mc_opts.common.limits();
      auto f = endslab::map_from_string(read_payload(mc_opts.map), lims);
      auto report = endslab::check_coarse(f, mc_opts.probe, mc_opts.kin, lims);
      emit_json(endslab::map_check_to_json(report), mc_opts.common.out);
      return report.ok() ? kExitOk : kExitNegative;
    }

    if (cmd_close->parsed()) {
      auto lims = close_opts.common.limits();
      auto f = endslab::map_from_string(read_payload(close_opts.f), lims);
      auto g = endslab::map_from_string(read_payload(close_opts.g), lims);
      auto report = endslab::are_close(f, g, close_opts.probe, lims);
      emit_json(endslab::closeness_to_json(report), close_opts.common.out);
      return report.close ? kExitOk : kExitNegative;
    }

    if (cmd_me->parsed()) {
      auto lims = me_opts.common.limits();
      auto f = endslab::map_from_string(read_payload(me_opts.f), lims);
      endslab::Dist margin = me_opts.margin > 0 ? me_opts.margin : 2 * me_opts.k + 4;

      // The source horizon must push frontier images past the target r_max.
      endslab::ThreadSystem src;
      endslab::Dist max_image_depth = 0;
      endslab::BaseDistance target_depth(f.target, f.target.basepoint());
      for (int attempt = 0;; ++attempt) {
        src = endslab::component_threads(f.source, f.source.basepoint(), me_opts.k, me_opts.rmax,
                                         margin, lims);
        endslab::Dist min_depth = endslab::kUnreachable;
        max_image_depth = 0;
        for (int idx : src.window.frontier()) {
          endslab::Dist d = target_depth(endslab::apply_map(f, src.window.point(idx)));
          min_depth = std::min(min_depth, d);
          max_image_depth = std::max(max_image_depth, d);
        }
        if (min_depth > me_opts.rmax) break;
        if (attempt >= 3) {
          throw endslab::InputError(
              "map-ends: frontier images stay inside B(eta; r_max); the map looks non-proper "
              "at this scale");
        }
        margin *= 2;
      }
      auto dst = endslab::component_threads(f.target, f.target.basepoint(), me_opts.k,
                                            me_opts.rmax,
                                            std::max<endslab::Dist>(1, max_image_depth - me_opts.rmax),
                                            lims);
      auto mapping = endslab::induced_end_map(f, src, dst);
      emit_json(endslab::end_mapping_to_json(mapping), me_opts.common.out);
      return kExitOk;
    }

    if (cmd_ver->parsed()) {
      auto lims = ver_opts.common.limits();
      if (!ver_opts.certificate.empty()) {
        auto file = endslab::certificate_from_json(
            nlohmann::json::parse(read_payload(ver_opts.certificate)), lims);
        auto report = endslab::verify_certificate(file.space, file.xi, file.s, file.t, file.cert,
                                                  lims);
        nlohmann::ordered_json j;
        j["ok"] = report.ok;
        j["issues"] = report.issues;
        emit_json(j, ver_opts.common.out);
        return report.ok ? kExitOk : kExitNegative;
      }
      if (!ver_opts.witness.empty()) {
        auto file = endslab::witness_from_json(
            nlohmann::json::parse(read_payload(ver_opts.witness)), lims);
        endslab::Dist rprobe = ver_opts.rprobe >= 0 ? ver_opts.rprobe : 8;
        auto report = endslab::verify_witness(file.space, file.xi, file.s, file.t, file.witness,
                                              rprobe);
        emit_json(endslab::witness_report_to_json(report), ver_opts.common.out);
        return report.ok() ? kExitOk : kExitNegative;
      }
      throw endslab::InputError("verify: provide --certificate or --witness");
    }
  } catch (const endslab::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const endslab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
