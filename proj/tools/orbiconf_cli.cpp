// orbiconf_cli: homology of configuration spaces of global quotient
// orbifolds, and checks of the stability, transfer, duality and comma-cover
// statements on them.
//
// Exit codes: 0 pass, 1 a check failed, 2 input error, 3 capacity exceeded.

#include "orbiconf/orbiconf.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace orbiconf;

namespace {

struct RunConfig {
    std::string command;  // homology | verify
    std::string check;    // stability | dold | duality | transfer | chi-c | comma | omega
    std::string input;
    size_t n = 1;
    size_t n_max = 3;
    std::optional<size_t> m;
    std::string coeff = "rational";
    std::optional<size_t> subdiv;
    size_t capacity = 10'000'000;
    std::optional<int> max_degree;
    std::string format = "json";
    std::string output;
    uint64_t seed = 0;
    uint32_t points = 6;
    bool involution = false;
    bool strata = false;
};

struct Outcome {
    Json report;
    bool pass = true;
};

GlobalQuotientOrbifold load(const RunConfig& c) {
    if (c.input.empty()) throw InputError("--input is required");
    return parse_orbifold(read_json_file(c.input), c.subdiv);
}

Outcome cmd_homology(const RunConfig& c) {
    auto x = load(c);
    int top = c.max_degree.value_or(-1);
    HomologyReport r;
    std::string coeff = c.coeff;
    if (c.m) {
        if (coeff != "rational") throw InputError("stratum homology is rational only");
        r = stratum_model(x, c.n, *c.m, std::nullopt, top, c.capacity).rational_homology();
    } else if (coeff == "rational") {
        r = conf_homology(x, c.n, Coefficients::rational, {}, top, c.capacity);
    } else if (coeff == "integral") {
        r = conf_homology(x, c.n, Coefficients::integral, {}, top, c.capacity);
    } else if (coeff.rfind("character:", 0) == 0) {
        auto chi = character_by_name(x, coeff.substr(10));
        r = conf_homology(x, c.n, Coefficients::character, chi, top, c.capacity);
    } else {
        throw InputError("--coeff must be rational, integral or character:<name>");
    }
    Json j = to_json(r, c.n, coeff, c.m);
    j["subdiv"] = x.subdiv_level();
    return {j, true};
}

Json verdict_rows(const std::vector<Verdict>& vs) {
    Json rows = Json::array();
    for (const auto& v : vs) rows.push_back(to_json(v));
    return rows;
}

Outcome cmd_verify(const RunConfig& c) {
    Outcome out;
    Json results = Json::array();
    if (c.check == "comma") {
        FiniteGroup g = FiniteGroup::trivial(c.points);
        std::string base = "trivial group on " + std::to_string(c.points) + " points";
        if (c.involution) {
            if (c.points % 2) throw InputError("--involution needs an even number of points");
            Perm swap(c.points);
            for (uint32_t i = 0; i < c.points; ++i) swap[i] = i ^ 1u;
            g = FiniteGroup::generated_by(c.points, {swap});
            base = "Z/2 on " + std::to_string(c.points) + " points in " + std::to_string(c.points / 2) + " orbits";
        }
        std::vector<size_t> ms;
        if (c.m) ms = {*c.m};
        else
            for (size_t m = 0; m < c.n; ++m) ms.push_back(m);
        for (size_t m : ms) {
            if (m >= c.n) throw InputError("comma check needs m < n");
            auto rep = verify_comma(g, c.n, m, true, c.capacity);
            Json j = to_json(rep);
            j["base"] = base;
            out.pass = out.pass && rep.skeleta_ok && rep.invariance_ok;
            results.push_back(j);
        }
        return {Json{{"check", c.check}, {"results", results}, {"pass", out.pass}}, out.pass};
    }

    auto x = load(c);
    if (c.check == "stability") {
        auto rep = verify_stability(x, c.n_max, c.strata, c.capacity);
        out.pass = rep.pass();
        Json j = to_json(rep);
        results = j["rows"];
        Json report{{"check", c.check}, {"results", results}, {"warnings", j["warnings"]}, {"pass", out.pass}};
        return {report, out.pass};
    }
    int top = c.max_degree.value_or(static_cast<int>(c.n) * x.dimension());
    if (c.check == "dold") {
        MapEngine e(x, top, c.capacity);
        auto vs = verify_dold(e, c.n);
        out.pass = all_pass(vs);
        results = verdict_rows(vs);
    } else if (c.check == "transfer") {
        MapEngine e(x, top, c.capacity);
        std::vector<Verdict> vs;
        for (size_t n = 2; n <= c.n; ++n) {
            auto v = verify_transfer_identity(e, n);
            vs.insert(vs.end(), v.begin(), v.end());
        }
        out.pass = all_pass(vs);
        results = verdict_rows(vs);
    } else if (c.check == "duality") {
        auto rep = duality_check(x, c.n, c.capacity);
        out.pass = rep.pass;
        results.push_back(to_json(rep));
    } else if (c.check == "chi-c") {
        auto rep = chi_c_report(x, c.n, c.capacity);
        out.pass = rep.additive();
        results.push_back(to_json(rep));
    } else if (c.check == "omega") {
        auto omega = x.orientation_character();
        for (size_t m = 0; m <= c.n; ++m) {
            bool ok = block_factorization_holds(omega, x.group(), c.n, m, c.capacity);
            out.pass = out.pass && ok;
            results.push_back(Json{{"n", c.n}, {"m", m}, {"pass", ok}});
        }
    } else {
        throw InputError("unknown check " + c.check);
    }
    return {Json{{"check", c.check}, {"results", results}, {"pass", out.pass}}, out.pass};
}

std::string render_markdown(const RunConfig& c, const Json& report) {
    std::ostringstream out;
    if (c.command == "homology") {
        out << "| degree | betti | torsion |\n|---|---|---|\n";
        for (size_t k = 0; k < report["betti"].size(); ++k) {
            std::string tors;
            for (const auto& t : report["torsion"][k]) tors += (tors.empty() ? "Z/" : " + Z/") + t.get<std::string>();
            out << "| " << k << " | " << report["betti"][k].dump() << " | " << tors << " |\n";
        }
        return out.str();
    }
    Json rows = report["results"];
    for (auto& r : rows) {
        r.erase("lhs");
        r.erase("rhs");
    }
    out << "### " << c.check << ": " << (report["pass"].get<bool>() ? "pass" : "FAIL") << "\n\n" << markdown_table(rows);
    if (report.contains("warnings"))
        for (const auto& w : report["warnings"]) out << "\nwarning: " << w.get<std::string>() << "\n";
    return out.str();
}

void add_common(CLI::App* app, RunConfig& c) {
    app->add_option("--input", c.input, "orbifold JSON file");
    app->add_option("--subdiv", c.subdiv, "subdivision level (overrides the file)");
    app->add_option("--capacity", c.capacity, "cell budget per complex");
    app->add_option("--max-degree", c.max_degree, "highest homology degree computed");
    app->add_option("--format", c.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
    app->add_option("--output", c.output, "write the report here instead of stdout");
    app->add_option("--seed", c.seed, "recorded in the report; checks here are exhaustive");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig c;
    CLI::App app{"Configuration spaces of global quotient orbifolds"};
    app.require_subcommand(1);
    auto* hom = app.add_subcommand("homology", "homology of Conf_n or of a stratum C_{n,m}");
    add_common(hom, c);
    hom->add_option("--n", c.n, "number of points")->check(CLI::Range(size_t(0), size_t(64)));
    hom->add_option("--m", c.m, "points on the singular locus (stratum homology)");
    hom->add_option("--coeff", c.coeff, "rational | integral | character:<trivial|sign|orientation|or>");
    auto* ver = app.add_subcommand("verify", "run a check and report pass/fail");
    add_common(ver, c);
    ver->add_option("check", c.check)
        ->required()
        ->check(CLI::IsMember({"stability", "dold", "duality", "transfer", "chi-c", "comma", "omega"}));
    ver->add_option("--n", c.n, "number of points")->check(CLI::Range(size_t(1), size_t(64)));
    ver->add_option("--n-max", c.n_max, "largest n in the stability table")->check(CLI::Range(size_t(1), size_t(64)));
    ver->add_option("--m", c.m, "block size m (comma)");
    ver->add_option("--points", c.points, "base points for the comma check");
    ver->add_flag("--involution", c.involution, "comma check over Z/2 swapping points 2i and 2i+1");
    ver->add_flag("--strata", c.strata, "also tabulate strata in the stability check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    c.command = hom->parsed() ? "homology" : "verify";

    try {
        Outcome o = c.command == "homology" ? cmd_homology(c) : cmd_verify(c);
        o.report["command"] = c.command;
        o.report["seed"] = c.seed;
        std::string text = c.format == "json" ? o.report.dump(2) + "\n" : render_markdown(c, o.report);
        if (c.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(c.output);
            if (!f) throw InputError("cannot write " + c.output);
            f << text;
        }
        return o.pass ? 0 : 1;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "capacity: out of memory\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
