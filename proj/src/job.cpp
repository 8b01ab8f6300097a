#include "quadfermat/job.hpp"

#include <json.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace quadfermat {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(Cx v) {
    // +0.0 normalizes signed zeros so equal inputs serialize identically
    return Json::array({v.real() + 0.0, v.imag() + 0.0});
}

Json to_json(const QuadraticForm& q) {
    return Json{{"a", to_json(q.a)},         {"alpha", to_json(q.alpha)},
                {"b", to_json(q.b)},         {"beta", to_json(q.beta)},
                {"gamma", to_json(q.gamma)}, {"C", to_json(q.cc)}};
}

Json to_json(const NormalForm& nf) {
    return Json{{"x1", to_json(nf.x1)},           {"y1", to_json(nf.y1)},
                {"xi", to_json(nf.xi)},           {"eta", to_json(nf.eta)},
                {"scale_u", to_json(nf.scale_u)}, {"scale_v", to_json(nf.scale_v)},
                {"d11", to_json(nf.d11)},         {"d12", to_json(nf.d12)},
                {"e11", to_json(nf.e11)},         {"e12", to_json(nf.e12)},
                {"t1", to_json(nf.t1)},           {"t2", to_json(nf.t2)}};
}

Json to_json(const SolutionFamily& fam) {
    Json params = Json::object();
    for (const auto& [name, value] : fam.free_params) params[name] = to_json(value);
    Json constraints = Json::array();
    for (const auto& [label, residual] : fam.constraints)
        constraints.push_back(Json{{"label", label}, {"residual", to_json(residual)}});
    Json j{{"source", fam.source},
           {"expr", render(fam.f)},
           {"params", std::move(params)},
           {"constraints", std::move(constraints)}};
    if (fam.validate_only) j["validate_only"] = true;
    if (fam.stated_form) j["stated_form"] = render(*fam.stated_form);
    if (!fam.notes.empty()) j["notes"] = fam.notes;
    return j;
}

Json to_json(const VerificationReport& rep) {
    Json j{{"max_abs_residual", rep.max_abs_residual},
           {"mean_abs_residual", rep.mean_abs_residual},
           {"worst_point", Json::array({to_json(rep.worst_point.first),
                                        to_json(rep.worst_point.second)})},
           {"verdict", to_string(rep.verdict)}};
    if (!rep.constraint_residuals.empty()) {
        Json cs = Json::array();
        for (const auto& [label, value] : rep.constraint_residuals)
            cs.push_back(Json{{"label", label}, {"residual", value}});
        j["constraint_residuals"] = std::move(cs);
    }
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::NondegenerateReducible: return "NondegenerateReducible";
        case Classification::DegenerateParallelLines: return "DegenerateParallelLines";
        case Classification::DegenerateIntersectingLines: return "DegenerateIntersectingLines";
    }
    return "?";
}

Cx param_or(const JobConfig& cfg, const std::string& name, Cx fallback) {
    const auto it = cfg.params.find(name);
    return it == cfg.params.end() ? fallback : it->second;
}

Cx require_param(const JobConfig& cfg, const std::string& name) {
    const auto it = cfg.params.find(name);
    if (it == cfg.params.end()) throw Error("missing required --param " + name + "=<complex>");
    return it->second;
}

VerificationReport verify_family(const QuadraticForm& q, const SolutionFamily& fam,
                                 const SampleSpec& spec, const ToleranceConfig& tol) {
    VerificationReport rep = verify(fam.kind, q, fam.f, spec, tol);
    for (const auto& [label, value] : fam.constraints)
        rep.constraint_residuals.emplace_back(label, std::abs(value));
    for (const auto& note : fam.notes) rep.notes.push_back(note);
    return rep;
}

SolutionFamily build_family(const JobConfig& cfg, const NormalForm& nf) {
    if (!cfg.kind) throw Error("solve needs --kind");
    const auto need_shift = [&]() -> Shift {
        if (!cfg.shift) throw Error("M-kind equations need --shift c1,c2");
        return *cfg.shift;
    };
    switch (*cfg.kind) {
        case EquationTag::L1L2:
            if (cfg.case_index == 2)
                return construct_thm31_case2(nf, param_or(cfg, "R5", Cx(0.0, 0.0)),
                                             param_or(cfg, "R6", Cx(1.0, 0.0)), cfg.tol);
            return construct_thm31_case1(nf, param_or(cfg, "R4", Cx(1.0, 0.0)), cfg.ksign,
                                         cfg.tol);
        case EquationTag::L1L3:
            throw UnsupportedCase(
                "the L1L3 equation admits no transcendental entire solution; use "
                "sweep-nonexistence");
        case EquationTag::L1L4:
            return construct_thm33(nf, param_or(cfg, "B11", Cx(1.0, 0.0)), cfg.ksign, cfg.tol);
        case EquationTag::M1M2:
            if (cfg.case_index == 2) {
                Expr psi1 = cfg.candidate ? parse(*cfg.candidate) : Expr::constant(Cx(0.0, 0.0));
                return validate_thm34_case2(nf, need_shift(), require_param(cfg, "ALPHA1"),
                                            require_param(cfg, "ALPHA2"),
                                            param_or(cfg, "B", Cx(0.0, 0.0)), psi1, cfg.tol);
            }
            return construct_thm34_case1(nf, need_shift(), param_or(cfg, "MU", Cx(1.0, 0.0)),
                                         cfg.ksign, cfg.tol);
        case EquationTag::M1M3:
            if (cfg.case_index == 2) {
                auto fams = construct_thm35_case2(nf, need_shift(),
                                                  param_or(cfg, "B", Cx(0.0, 0.0)),
                                                  param_or(cfg, "PCONST", Cx(1.0, 0.0)), cfg.tol);
                return fams.front();
            }
            return construct_thm35_case1(
                nf, need_shift(), static_cast<int>(param_or(cfg, "K", Cx(0.0, 0.0)).real()),
                Sign::Plus, param_or(cfg, "B", Cx(0.0, 0.0)), cfg.ksign, cfg.tol);
    }
    throw Error("unreachable kind");
}

}  // namespace

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QUADFERMAT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error("QUADFERMAT_SEED must be an unsigned integer");
        }
    }
    return 42;
}

std::string to_string(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::Reduce: return "reduce";
        case Command::Solve: return "solve";
        case Command::Verify: return "verify";
        case Command::CheckDerivatives: return "check-derivatives";
        case Command::SweepNonexistence: return "sweep-nonexistence";
    }
    return "?";
}

std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
    const bool takes_form = config.command != Command::CheckDerivatives;

    Json doc;
    doc["command"] = to_string(config.command);
    if (takes_form) doc["form"] = to_json(config.form);
    if (config.kind) doc["kind"] = to_string(*config.kind);
    if (config.shift)
        doc["shift"] = Json::array({to_json(config.shift->c1), to_json(config.shift->c2)});
    doc["branch"] = to_string(config.branch);

    const bool json_mode = config.output == OutputMode::Json;
    std::ostringstream text;
    int exit_code = 0;

    try {
        config.tol.validate();
        config.samples.validate();

        if (takes_form) {
            const Discriminants dis = discriminants(config.form);
            doc["discriminants"] = Json{{"delta", to_json(dis.delta)}, {"D", to_json(dis.dee)}};
            text << "delta = " << render_complex(dis.delta)
                 << ", D = " << render_complex(dis.dee) << "\n";
        }

        switch (config.command) {
            case Command::Classify: {
                const Classification c = classify(config.form, config.tol);
                doc["classification"] = classification_name(c);
                text << classification_name(c) << "\n";
                break;
            }
            case Command::Reduce: {
                doc["classification"] =
                    classification_name(classify(config.form, config.tol));
                const NormalForm nf = reduce(config.form, config.branch, config.tol);
                doc["normal_form"] = to_json(nf);
                text << "x1 = " << render_complex(nf.x1) << ", y1 = " << render_complex(nf.y1)
                     << "\n(xi, eta) = (" << render_complex(nf.xi) << ", "
                     << render_complex(nf.eta) << ")\nscales = (" << render_complex(nf.scale_u)
                     << ", " << render_complex(nf.scale_v) << ")\nD11 = "
                     << render_complex(nf.d11) << ", D12 = " << render_complex(nf.d12)
                     << ", E11 = " << render_complex(nf.e11)
                     << ", E12 = " << render_complex(nf.e12) << "\nT1 = " << render_complex(nf.t1)
                     << ", T2 = " << render_complex(nf.t2) << "\n";
                break;
            }
            case Command::Solve: {
                doc["classification"] =
                    classification_name(classify(config.form, config.tol));
                const NormalForm nf = reduce(config.form, config.branch, config.tol);
                doc["normal_form"] = to_json(nf);
                const SolutionFamily fam = build_family(config, nf);
                doc["solution"] = to_json(fam);
                VerificationReport rep =
                    verify_family(config.form, fam, config.samples, config.tol);
                if (fam.stated_form) {
                    EquationKind kind = fam.kind;
                    const VerificationReport stated =
                        verify(kind, config.form, *fam.stated_form, config.samples, config.tol);
                    rep.constraint_residuals.emplace_back("stated_form_max_residual",
                                                          stated.max_abs_residual);
                    doc["stated_form_verification"] = to_json(stated);
                }
                doc["verification"] = to_json(rep);
                text << "f = " << render(fam.f) << "\n"
                     << "verdict: " << to_string(rep.verdict)
                     << " (max residual " << rep.max_abs_residual << ")\n";
                if (fam.stated_form)
                    text << "stated form = " << render(*fam.stated_form)
                         << " (reported, not asserted)\n";
                if (!fam.validate_only && rep.verdict != Verdict::PASS &&
                    rep.verdict != Verdict::CONSTANT)
                    exit_code = 1;
                break;
            }
            case Command::Verify: {
                if (!config.kind) throw Error("verify needs --kind");
                if (!config.candidate) throw Error("verify needs --candidate <expr>");
                const EquationKind kind{*config.kind, config.shift};
                const Expr f = parse(*config.candidate);
                if (!is_entire(f))
                    throw Error("candidate must be an entire function (no division)");
                const VerificationReport rep =
                    verify(kind, config.form, f, config.samples, config.tol);
                doc["verification"] = to_json(rep);
                text << "verdict: " << to_string(rep.verdict) << " (max residual "
                     << rep.max_abs_residual << ", worst point ("
                     << render_complex(rep.worst_point.first) << ", "
                     << render_complex(rep.worst_point.second) << "))\n";
                if (rep.verdict != Verdict::PASS) exit_code = 1;
                break;
            }
            case Command::CheckDerivatives: {
                if (!config.candidate) throw Error("check-derivatives needs --candidate <expr>");
                const Expr f = parse(*config.candidate);
                const double disc = fd_crosscheck(f, config.samples, config.tol);
                doc["fd_max_discrepancy"] = disc;
                text << "max symbolic-vs-FD discrepancy: " << disc << "\n";
                if (disc > 1e-5) exit_code = 1;
                break;
            }
            case Command::SweepNonexistence: {
                const VerificationReport rep =
                    nonexistence_l1l3(config.form, config.samples, config.tol);
                doc["verification"] = to_json(rep);
                text << "sweep verdict: " << to_string(rep.verdict)
                     << " (min max-residual over non-constant templates: "
                     << rep.max_abs_residual << ")\n";
                break;
            }
        }
    } catch (const SyntaxError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedCase& e) {
        err << "unsupported case: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateForm& e) {
        err << "degenerate form: " << e.what() << "\n";
        return 3;
    } catch (const BranchUndefined& e) {
        err << "branch undefined: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateKSystem& e) {
        err << "degenerate K system: " << e.what() << "\n";
        return 3;
    } catch (const HypothesisViolated& e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateFrequency& e) {
        err << "degenerate frequency: " << e.what() << "\n";
        return 3;
    } catch (const ZeroC2& e) {
        err << "zero c2: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateDenominator& e) {
        err << "degenerate denominator: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateAmplitude& e) {
        err << "degenerate amplitude: " << e.what() << "\n";
        return 3;
    } catch (const NoAdmissibleRoot& e) {
        err << "no admissible root: " << e.what() << "\n";
        return 3;
    } catch (const LambertFailure& e) {
        err << "lambert failure: " << e.what() << "\n";
        return 3;
    } catch (const NoConvergence& e) {
        err << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    doc["seed"] = config.samples.seed;
    if (json_mode)
        out << doc.dump(2) << "\n";
    else
        out << text.str();
    return exit_code;
}

}  // namespace quadfermat
