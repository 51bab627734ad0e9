// fwc: build, analyze and verify the few-weight code constructions.
//
// Subcommands: build, analyze, verify, lemmas, designs.  All flags can
// also be set through a TOML config file (--config); command-line flags
// take precedence.  FWC_BUDGET in the environment overrides the codeword
// enumeration budget.  Reports are deterministic; timing goes to stderr.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fwc/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw fwc::structural_error("cannot write: " + path);
    f << content;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
    std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

struct FamilyFlags {
    std::string family = "F1";
    std::uint64_t q = 2;
    std::uint32_t m = 2;
    std::int64_t t = -1, t2 = -1;
    std::int64_t g_mask = -1, g_cst = -1;
    std::string spec_file;

    fwc::FamilySpec to_spec() const {
        if (!spec_file.empty()) {
            std::ifstream f(spec_file);
            if (!f) throw fwc::structural_error("cannot read spec file: " + spec_file);
            return fwc::FamilySpec::from_json(nlohmann::json::parse(f));
        }
        auto spec = fwc::FamilySpec::make(fwc::family_from_name(family), q, m);
        if (t >= 0) {
            if (spec.family == fwc::Family::F3 || spec.family == fwc::Family::F4)
                (spec.family == fwc::Family::F4 ? spec.f : spec.g) =
                    fwc::FuncSpec::trace_of_monomial(static_cast<std::uint64_t>(t));
            else
                throw fwc::spec_error("--t applies to families F3 and F4");
        }
        if (t2 >= 0) {
            if (spec.family != fwc::Family::F4) throw fwc::spec_error("--t2 applies to family F4");
            spec.g = fwc::FuncSpec::trace_of_monomial(static_cast<std::uint64_t>(t2));
        }
        if (g_mask >= 0 || g_cst >= 0) {
            if (spec.family != fwc::Family::F5 && spec.family != fwc::Family::F6)
                throw fwc::spec_error("--g-mask/--g-cst apply to families F5 and F6");
            spec.g = fwc::FuncSpec::bent_mm(g_mask >= 0 ? static_cast<std::uint32_t>(g_mask) : 0,
                                            g_cst >= 0 ? static_cast<std::uint32_t>(g_cst) : 0);
        }
        return spec;
    }

    void attach(CLI::App* app, bool family_required) {
        auto* f = app->add_option("--family", family, "family id F1..F6");
        if (family_required) f->required();
        app->add_option("--q", q, "subfield size q (prime power)");
        app->add_option("--m", m, "extension degree m");
        app->add_option("--t", t, "monomial exponent for F3 (g) / F4 (f)");
        app->add_option("--t2", t2, "second monomial exponent for F4 (g)");
        app->add_option("--g-mask", g_mask, "bent g: linear-term mask");
        app->add_option("--g-cst", g_cst, "bent g: affine constant");
        app->add_option("--spec", spec_file, "family spec as a JSON file (overrides flags)");
    }
};

int cmd_build(const FamilyFlags& ff, const std::string& out) {
    auto spec = ff.to_spec();
    auto build = fwc::families::prepare(spec);
    auto code = fwc::families::build_code(build);
    std::string matrix = fwc::lincode::write_matrix(code);
    nlohmann::json sidecar{{"tool_version", kVersion},
                           {"spec", spec.to_json()},
                           {"field", build.tower->descriptor()},
                           {"n", code.n()},
                           {"k", code.k()},
                           {"defining_size", build.defining.size()},
                           {"W", build.W()}};
    if (out.empty() || out == "-") {
        std::cout << matrix;
    } else {
        write_file(out, matrix);
        write_file(out + ".json", sidecar.dump(2) + "\n");
    }
    return 0;
}

int cmd_analyze(const std::string& matrix_path, bool subfield, std::int64_t puncture_at,
                bool dual_mw, bool hermitian, const std::string& csv_path,
                const std::string& json_path, unsigned threads) {
    Timer timer;
    fwc::LinearCode code = fwc::lincode::read_matrix_file(matrix_path);
    nlohmann::json report{{"tool_version", kVersion}, {"input", matrix_path}};
    std::vector<std::string> steps;
    if (subfield) {
        code = fwc::families::subfield_code(code);
        steps.push_back("subfield");
    }
    if (puncture_at >= 0) {
        code = fwc::lincode::puncture(code, static_cast<std::size_t>(puncture_at));
        steps.push_back("puncture@" + std::to_string(puncture_at));
    }
    report["derivation"] = steps;
    report["field"] = code.field().descriptor();

    auto dist = fwc::lincode::weight_distribution(code, fwc::enumeration_budget(), threads);
    std::uint64_t d = dist.min_distance();
    report["n"] = code.n();
    report["k"] = code.k();
    report["d"] = d;
    report["weight_distribution"] = dist.to_json();
    if (d >= 1) {
        nlohmann::json bounds = nlohmann::json::array();
        for (const auto& b : fwc::lincode::bound_verdicts(code.n(), code.k(), d, code.q()))
            bounds.push_back(b.to_json());
        report["bounds"] = bounds;
    }
    if (dual_mw) {
        auto dd = fwc::lincode::macwilliams_transform(dist, code.k());
        report["dual"] = {{"n", code.n()},
                          {"k", code.n() - code.k()},
                          {"d", dd.min_distance()},
                          {"weight_distribution", dd.to_json()}};
    }
    if (hermitian)
        report["hermitian_self_orthogonal"] = fwc::lincode::hermitian_self_orthogonal(code);

    if (!csv_path.empty()) write_file(csv_path, dist.csv());
    emit_json(report, json_path);
    std::cerr << "analyze: " << timer.seconds() << " s\n";
    return 0;
}

int cmd_verify(bool all, bool lemmas, bool designs_only, bool have_family, const FamilyFlags& ff,
               const std::string& json_path, unsigned threads) {
    Timer timer;
    fwc::verify::SuiteOptions opt;
    opt.threads = threads;
    opt.budget = fwc::enumeration_budget();
    fwc::verify::Ledger led;
    if (all) {
        led = fwc::verify::run_all(opt);
    } else {
        bool ran = false;
        if (lemmas) {
            led.append(fwc::verify::run_lemmas(opt));
            ran = true;
        }
        if (designs_only) {
            led.append(fwc::verify::run_designs(opt));
            ran = true;
        }
        if (have_family) {
            led.append(fwc::verify::run_family(ff.to_spec(), opt));
            ran = true;
        }
        if (!ran) led = fwc::verify::run_all(opt);
    }
    auto j = led.to_json();
    j["tool_version"] = kVersion;
    std::string path = json_path.empty() ? "fwc-ledger.json" : json_path;
    if (path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_file(path, j.dump(2) + "\n");
    std::cerr << "verify: " << led.count("pass") << " pass, " << led.count("fail") << " fail, "
              << led.count("skip") << " skip in " << timer.seconds() << " s; ledger: " << path
              << "\n";
    return led.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"few-weight code constructions: build, analyze, verify"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "TOML config file; command-line flags take precedence");
    app.require_subcommand(1);

    unsigned threads = 1;
    app.add_option("--threads", threads, "worker cap for enumeration")->capture_default_str();

    // build
    auto* build = app.add_subcommand("build", "construct a generator matrix");
    FamilyFlags bff;
    bff.attach(build, true);
    std::string build_out;
    build->add_option("-o,--out", build_out, "matrix output path (sidecar: <out>.json)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "weight distribution, bounds, duals");
    std::string matrix_path, csv_path, analyze_json;
    bool subfield = false, dual_mw = false, hermitian = false;
    std::int64_t puncture_at = -1;
    analyze->add_option("matrix", matrix_path, "matrix file in the plain-text format")->required();
    analyze->add_flag("--subfield", subfield, "analyze the q-ary subfield code");
    analyze->add_option("--puncture", puncture_at, "puncture at this coordinate");
    analyze->add_flag("--dual-via-macwilliams", dual_mw, "include the dual weight distribution");
    analyze->add_flag("--hermitian", hermitian, "include the Hermitian self-orthogonality check");
    analyze->add_option("--csv", csv_path, "write the weight distribution as CSV");
    analyze->add_option("--json", analyze_json, "report path (default: stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "diff constructions against the closed forms");
    FamilyFlags vff;
    vff.attach(verify, false);
    bool v_all = false, v_lemmas = false, v_designs = false;
    std::string verify_json;
    verify->add_flag("--all", v_all, "lemma grids, family tables, designs, cross-validation");
    verify->add_flag("--lemmas", v_lemmas, "character-sum lemma grids only");
    verify->add_flag("--designs", v_designs, "design claims only");
    verify->add_option("--json", verify_json, "ledger path (default: fwc-ledger.json)");

    // lemmas
    auto* lemmas = app.add_subcommand("lemmas", "character-sum lemma grids");
    lemmas->alias("verify-lemmas");
    std::uint64_t q_max = 5;
    std::uint32_t m_max = 3;
    std::string lemmas_json;
    lemmas->add_option("--q-max", q_max, "grid bound on q")->capture_default_str();
    lemmas->add_option("--m-max", m_max, "grid bound on m")->capture_default_str();
    lemmas->add_option("--json", lemmas_json, "report path (default: stdout)");

    // designs
    auto* designs = app.add_subcommand("designs", "design claims");
    std::string designs_json;
    designs->add_option("--json", designs_json, "report path (default: stdout)");

    try {
        app.parse(argc, argv);

        if (build->parsed()) return cmd_build(bff, build_out);
        if (analyze->parsed())
            return cmd_analyze(matrix_path, subfield, puncture_at, dual_mw, hermitian, csv_path,
                               analyze_json, threads);
        if (verify->parsed()) {
            bool have_family = verify->count("--family") > 0 || !vff.spec_file.empty();
            return cmd_verify(v_all, v_lemmas, v_designs, have_family, vff, verify_json, threads);
        }
        if (lemmas->parsed()) {
            fwc::verify::SuiteOptions opt;
            opt.lemma_q_max = q_max;
            opt.lemma_m_max = m_max;
            auto led = fwc::verify::run_lemmas(opt);
            auto j = led.to_json();
            j["tool_version"] = kVersion;
            emit_json(j, lemmas_json);
            return led.all_ok() ? 0 : 1;
        }
        if (designs->parsed()) {
            fwc::verify::SuiteOptions opt;
            opt.threads = threads;
            auto led = fwc::verify::run_designs(opt);
            auto j = led.to_json();
            j["tool_version"] = kVersion;
            emit_json(j, designs_json);
            return led.all_ok() ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help / --version
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const fwc::resource_error& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return 3;
    } catch (const fwc::spec_error& e) {
        std::cerr << "spec: " << e.what() << "\n";
        return 2;
    } catch (const fwc::lemma_violation& e) {
        std::cerr << "lemma violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
