#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "quadfermat/job.hpp"

namespace {

using quadfermat::Cx;

quadfermat::Shift parse_shift(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw quadfermat::Error("--shift expects c1,c2 (e.g. 1,2 or 0.5+0.25i,1)");
    return {quadfermat::parse_complex(text.substr(0, comma)),
            quadfermat::parse_complex(text.substr(comma + 1))};
}

void add_common(CLI::App* cmd, quadfermat::JobConfig& cfg, std::string& shift_text,
                std::string& kind_text, std::string& branch_text, std::string& output_text,
                std::vector<std::string>& param_texts, std::string& candidate_text,
                bool& seed_given) {
    auto add_coeff = [&](const char* flag, Cx& field, const char* help) {
        cmd->add_option_function<std::string>(
               flag, [&field](const std::string& s) { field = quadfermat::parse_complex(s); },
               help)
            ->expected(1);
    };
    add_coeff("--a", cfg.form.a, "coefficient a");
    add_coeff("--alpha", cfg.form.alpha, "coefficient alpha");
    add_coeff("--b", cfg.form.b, "coefficient b");
    add_coeff("--beta", cfg.form.beta, "coefficient beta");
    add_coeff("--gamma", cfg.form.gamma, "coefficient gamma");
    add_coeff("--cc", cfg.form.cc, "constant C");
    cmd->add_option("--kind", kind_text, "equation kind: l1l2, l1l3, l1l4, m1m2, m1m3");
    cmd->add_option("--shift", shift_text, "shift c1,c2 (required for m-kinds)");
    cmd->add_option("--branch", branch_text, "sign pairing: plus (default) or minus");
    cmd->add_option("--case", cfg.case_index, "solution family case (1 or 2)");
    cmd->add_option("--param", param_texts, "free constant NAME=VALUE (repeatable)");
    cmd->add_option("--candidate", candidate_text, "candidate expression text");
    cmd->add_option_function<std::int64_t>(
        "--samples", [&cfg](std::int64_t n) { cfg.samples.count = n; }, "sample count");
    cmd->add_option_function<double>(
        "--radius", [&cfg](double r) { cfg.samples.radius = r; }, "sample box radius");
    cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&cfg, &seed_given](std::uint64_t s) {
            cfg.samples.seed = s;
            seed_given = true;
        },
        "RNG seed (default 42, or QUADFERMAT_SEED)");
    cmd->add_option_function<double>(
        "--abs-tol", [&cfg](double t) { cfg.tol.abs_tol = t; }, "absolute tolerance");
    cmd->add_option_function<double>(
        "--rel-tol", [&cfg](double t) { cfg.tol.rel_tol = t; }, "relative tolerance");
    cmd->add_option("--output", output_text, "output mode: text (default) or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify, reduce, solve and verify general quadratic Fermat-type "
                 "functional equations in two complex variables"};
    app.require_subcommand(1);

    quadfermat::JobConfig cfg;
    std::string shift_text, kind_text, branch_text = "plus", output_text = "text";
    std::string candidate_text;
    std::vector<std::string> param_texts;
    bool seed_given = false;

    const std::vector<std::pair<std::string, quadfermat::Command>> commands = {
        {"classify", quadfermat::Command::Classify},
        {"reduce", quadfermat::Command::Reduce},
        {"solve", quadfermat::Command::Solve},
        {"verify", quadfermat::Command::Verify},
        {"check-derivatives", quadfermat::Command::CheckDerivatives},
        {"sweep-nonexistence", quadfermat::Command::SweepNonexistence},
    };
    for (const auto& [name, command] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, cfg, shift_text, kind_text, branch_text, output_text, param_texts,
                   candidate_text, seed_given);
        sub->callback([&cfg, command] { cfg.command = command; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!seed_given) cfg.samples.seed = quadfermat::default_seed();
        if (!kind_text.empty()) {
            const auto tag = quadfermat::equation_tag_from_string(kind_text);
            if (!tag) throw quadfermat::Error("unknown --kind '" + kind_text + "'");
            cfg.kind = *tag;
        }
        if (!shift_text.empty()) cfg.shift = parse_shift(shift_text);
        if (branch_text == "plus")
            cfg.branch = quadfermat::Branch::Plus;
        else if (branch_text == "minus")
            cfg.branch = quadfermat::Branch::Minus;
        else
            throw quadfermat::Error("--branch must be plus or minus");
        if (output_text == "json")
            cfg.output = quadfermat::OutputMode::Json;
        else if (output_text != "text")
            throw quadfermat::Error("--output must be text or json");
        if (!candidate_text.empty()) cfg.candidate = candidate_text;
        for (const std::string& p : param_texts) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw quadfermat::Error("--param expects NAME=VALUE, got '" + p + "'");
            cfg.params[p.substr(0, eq)] = quadfermat::parse_complex(p.substr(eq + 1));
        }
    } catch (const quadfermat::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }

    return quadfermat::run(cfg, std::cout, std::cerr);
}
