// flatlink command-line tool. Every subcommand writes a JSON run report
// (or a plain summary with --human). Exit codes: 0 success, 1 a check
// failed, 2 usage or input error.

#include "flatlink/cubical.hpp"
#include "flatlink/davis.hpp"
#include "flatlink/diagram.hpp"
#include "flatlink/fixture_table.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/link_fixtures.hpp"
#include "flatlink/links.hpp"
#include "flatlink/obstruction.hpp"
#include "flatlink/type_l.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace flatlink;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

#ifndef FLATLINK_VERSION
#define FLATLINK_VERSION "unknown"
#endif

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

/// State shared by one invocation: the report under construction and the
/// human-readable summary lines.
struct Run {
    Json report = Json::object();
    std::vector<std::string> summary;
    int exit_code = exit_ok;

    std::string load_text(const std::string& path)
    {
        std::string text = read_text_file(path);
        report["inputs"][path] = "sha256:" + sha256_hex(text);
        return text;
    }
    Json load_json(const std::string& path) { return parse_json_text(load_text(path), path); }
    SimplicialComplex load_complex(const std::string& path) { return complex_from_json(load_json(path)); }

    void line(std::string s) { summary.push_back(std::move(s)); }
    void fail() { exit_code = exit_check_failed; }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_ints(const std::vector<std::size_t>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string matrix_text(const LinkingMatrix& m)
{
    if (m.empty())
        return "[] (no components)";
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m.size(); ++j)
            s += (j ? " " : "") + std::to_string(m[i][j]);
    }
    return s + "]";
}

int max_ground_from_env()
{
    const char* env = std::getenv("FLATLINK_MAX_GROUND");
    if (!env)
        return default_max_ground;
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(env, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || env[pos] != '\0' || value < 0 || value > CubicalComplex::max_supported_ground)
        throw InputError("FLATLINK_MAX_GROUND must be an integer in [0, "
                         + std::to_string(CubicalComplex::max_supported_ground) + "]");
    return value;
}

Json witness_json(const CapraceWitness& w)
{
    return Json{{"vertices", w.vertices}, {"north", w.north}, {"south", w.south}, {"type", to_string(w.type)}};
}

/// The hypothesis checks shared by verify and obstruct. Returns true when all pass.
bool run_checks(Run& run, const SimplicialComplex& k)
{
    Json checks;
    bool ok = true;

    const auto flag = is_flag(k);
    checks["flag"] = {{"pass", flag.flag}};
    if (flag.witness)
        checks["flag"]["missing_simplex"] = *flag.witness;
    run.line("flag: " + yes_no(flag.flag)
             + (flag.witness ? " (missing simplex " + detail::face_to_string(*flag.witness) + ")" : ""));
    ok &= flag.flag;

    const auto iso = has_isolated_squares(k);
    checks["isolated_squares"] = {{"pass", iso.isolated}, {"square_count", iso.squares.size()}};
    if (iso.offending_vertex) {
        checks["isolated_squares"]["offending_vertex"] = *iso.offending_vertex;
        Json sq = Json::array();
        for (const auto& s : iso.offending_squares)
            sq.push_back(s.cycle);
        checks["isolated_squares"]["offending_squares"] = sq;
    }
    run.line("isolated squares: " + yes_no(iso.isolated) + " (" + std::to_string(iso.squares.size()) + " squares"
             + (iso.offending_vertex ? ", vertex " + std::to_string(*iso.offending_vertex) + " lies in two" : "")
             + ")");
    ok &= iso.isolated;

    bool manifold_ok = false, sphere_ok = false;
    try {
        const auto sphere = is_homology_3sphere(k);
        manifold_ok = sphere.manifold.ok();
        sphere_ok = sphere.homology_sphere;
        checks["manifold"] = {{"pass", manifold_ok},
                              {"pseudomanifold", sphere.manifold.pseudomanifold},
                              {"vertex_links_are_2spheres", sphere.manifold.vertex_links_are_2spheres},
                              {"orientable", sphere.manifold.orientable},
                              {"problems", sphere.manifold.problems}};
        checks["homology_sphere"] = {{"pass", sphere_ok},
                                     {"homology", profile_to_string(sphere.profile)},
                                     {"note", sphere.note}};
    } catch (const InputError& e) {
        checks["manifold"] = {{"pass", false}, {"problems", {e.what()}}};
        checks["homology_sphere"] = {{"pass", false}, {"note", "not computed: manifold check rejected the input"}};
    }
    run.line("closed orientable 3-manifold: " + yes_no(manifold_ok));
    run.line("homology 3-sphere: " + yes_no(sphere_ok) + " (simple connectivity not checked)");
    ok &= manifold_ok && sphere_ok;

    const auto cap = caprace_criterion(k);
    Json ws = Json::array();
    for (const auto& w : cap.witnesses)
        ws.push_back(witness_json(w));
    checks["caprace"] = {{"pass", cap.passes}, {"witnesses", ws}, {"note", cap.note}};
    run.line("Caprace criterion: " + yes_no(cap.passes)
             + (cap.witnesses.empty() ? "" : " (" + std::to_string(cap.witnesses.size()) + " witnesses)"));
    ok &= cap.passes;

    run.report["checks"] = checks;
    return ok;
}

int cmd_verify(Run& run, const std::string& path)
{
    const auto k = run.load_complex(path);
    const bool ok = run_checks(run, k);
    run.report["result"] = {{"pass", ok}};
    if (!ok)
        run.fail();
    return run.exit_code;
}

int cmd_obstruct(Run& run, const std::string& path, bool certified)
{
    const auto k = run.load_complex(path);
    if (!run_checks(run, k)) {
        run.report["result"] = {{"pass", false}, {"reason", "prerequisite checks failed"}};
        run.line("prerequisites failed; no obstruction analysis");
        run.fail();
        return run.exit_code;
    }
    const auto link = link_from_squares(k);
    const auto m = linking_matrix(k, link);
    const auto verdict = obstruction_report(m, certified);
    Json triggers = Json::array();
    for (auto [i, j] : verdict.triggers)
        triggers.push_back({i, j});
    run.report["result"] = {{"pass", true},
                            {"square_link", link_to_json(link)},
                            {"linking_matrix", linking_matrix_to_json(m)},
                            {"certified_nontrivial", certified},
                            {"verdict", to_string(verdict.verdict)},
                            {"explanation", verdict.explanation},
                            {"triggers", triggers}};
    run.line("linking matrix: " + matrix_text(m));
    run.line(std::string("verdict: ") + to_string(verdict.verdict));
    run.line(verdict.explanation);
    return run.exit_code;
}

int cmd_pk(Run& run, const std::string& path, bool with_homology, bool emit_complex)
{
    const auto k = run.load_complex(path);
    const int bound = max_ground_from_env();
    const auto p = build_pk(k, bound);
    Json res = {{"ground", p.ground()},
                {"f_vector", p.f_vector()},
                {"euler_characteristic", p.euler_characteristic()},
                {"max_ground", bound}};
    run.line("P_K over " + std::to_string(p.ground()) + " generators: f = " + join_ints(p.f_vector())
             + ", chi = " + std::to_string(p.euler_characteristic()));
    if (with_homology) {
        const auto h = cubical_homology(p);
        res["homology"] = profile_to_string(h);
        run.line("homology: " + profile_to_string(h));
    }
    if (emit_complex)
        res["complex"] = cubical_to_json(p);
    run.report["result"] = res;
    return run.exit_code;
}

int cmd_davis(Run& run, const std::string& path, int n, bool emit_complex)
{
    const auto k = run.load_complex(path);
    const auto b = davis_ball(k, n);
    std::vector<std::size_t> spheres(static_cast<std::size_t>(n) + 1, 0);
    std::size_t interior = 0;
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
        ++spheres[b.vertices[v].size()];
        interior += b.is_interior(v);
    }
    Json res = {{"radius", n},
                {"vertex_count", b.vertices.size()},
                {"sphere_sizes", spheres},
                {"f_vector", b.f_vector()},
                {"interior_vertices", interior}};
    if (emit_complex)
        res["complex"] = davis_to_json(b);
    run.report["result"] = res;
    run.line("Davis ball of radius " + std::to_string(n) + ": " + std::to_string(b.vertices.size())
             + " vertices, f = " + join_ints(b.f_vector()));
    run.line("sphere sizes: " + join_ints(spheres) + ", interior vertices: " + std::to_string(interior));
    return run.exit_code;
}

int cmd_lk_simplicial(Run& run, const std::string& ambient_path, const std::string& link_path,
                      const std::string& fixture_name, bool reverse_ambient)
{
    SimplicialComplex ambient;
    EdgeCycleLink link;
    if (!fixture_name.empty()) {
        const auto fixtures = link_fixtures();
        auto it = std::find_if(fixtures.begin(), fixtures.end(), [&](const auto& f) { return f.name == fixture_name; });
        if (it == fixtures.end())
            throw InputError("unknown link fixture '" + fixture_name + "'");
        ambient = fixture(it->ambient);
        link = it->link;
        run.report["result"]["fixture"] = fixture_name;
    } else {
        if (ambient_path.empty())
            throw InputError("lk simplicial needs an ambient complex file or --fixture");
        ambient = run.load_complex(ambient_path);
        link = link_path.empty() ? link_from_squares(ambient) : link_from_json(run.load_json(link_path));
    }
    LinkingOptions options;
    options.reverse_ambient = reverse_ambient;
    const auto m = linking_matrix(ambient, link, options);
    run.report["result"]["link"] = link_to_json(link);
    run.report["result"]["linking_matrix"] = linking_matrix_to_json(m);
    run.report["result"]["reverse_ambient"] = reverse_ambient;
    run.line("linking matrix: " + matrix_text(m));
    return run.exit_code;
}

int cmd_lk_diagram(Run& run, const std::string& path, const std::string& fixture_name)
{
    PlanarDiagram d;
    if (!fixture_name.empty()) {
        d = diagram_fixture(fixture_name);
        run.report["result"]["fixture"] = fixture_name;
    } else if (!path.empty()) {
        d = diagram_from_json(run.load_json(path));
    } else {
        throw InputError("lk diagram needs a diagram file or --fixture");
    }
    const auto m = diagram_linking_matrix(d);
    run.report["result"]["linking_matrix"] = linking_matrix_to_json(m);
    run.report["result"]["crossings"] = d.crossings.size();
    run.line("linking matrix: " + matrix_text(m));
    return run.exit_code;
}

int cmd_build(Run& run, const std::string& matrix_path, const std::string& diagram_path,
              const std::string& diagram_name, const BuildBudget& budget, bool emit_complex)
{
    const int sources = !matrix_path.empty() + !diagram_path.empty() + !diagram_name.empty();
    if (sources > 1)
        throw InputError("give at most one of --matrix, --diagram-file, --diagram");
    LinkTarget target = LinkingMatrix{};
    if (!matrix_path.empty()) {
        const Json j = run.load_json(matrix_path);
        try {
            target = j.get<LinkingMatrix>();
        } catch (const Json::exception&) {
            throw InputError(matrix_path + ": expected a square array of integer arrays");
        }
    } else if (!diagram_path.empty()) {
        target = diagram_from_json(run.load_json(diagram_path));
    } else if (!diagram_name.empty()) {
        target = diagram_fixture(diagram_name);
    }
    const auto r = attempt_type_l_build(target, budget);
    Json attempts = Json::array();
    for (const auto& a : r.attempts)
        attempts.push_back({{"candidate", a.candidate}, {"outcome", a.outcome}});
    Json res = {{"found", r.found()},
                {"target_matrix", linking_matrix_to_json(target_matrix(target))},
                {"attempts", attempts},
                {"note", r.note},
                {"budget", {{"max_candidates", budget.max_candidates}, {"max_vertices", budget.max_vertices}}}};
    if (r.found()) {
        res["candidate"] = r.candidate;
        res["linking_matrix"] = linking_matrix_to_json(r.report->matrix);
        res["verifier_note"] = r.report->note;
        if (emit_complex)
            res["complex"] = complex_to_json(*r.complex);
    }
    run.report["result"] = res;
    run.line(r.found() ? "found: " + r.candidate + " (verified)" : r.note);
    return run.exit_code;
}

int cmd_fixture(Run& run, const std::string& name, bool list, bool table, const std::string& out_path,
                const std::string& kind)
{
    if (list) {
        Json entries = Json::array();
        for (const auto& f : fixtures::registry()) {
            entries.push_back({{"kind", "complex"}, {"name", f.name}, {"description", f.description}});
            run.line("complex  " + f.name + ": " + f.description);
        }
        for (const auto& d : diagrams::registry()) {
            entries.push_back({{"kind", "diagram"}, {"name", d.name}, {"description", d.description}});
            run.line("diagram  " + d.name + ": " + d.description);
        }
        for (const auto& l : link_fixtures()) {
            entries.push_back({{"kind", "link"}, {"name", l.name}, {"description", l.description}});
            run.line("link     " + l.name + ": " + l.description);
        }
        run.report["result"]["fixtures"] = entries;
        return run.exit_code;
    }
    if (table) {
        std::cout << fixture_property_table();
        return -1; // raw output already written
    }
    if (name.empty())
        throw InputError("fixture needs a name, --list or --table");
    Json data;
    if (kind == "complex") {
        data = complex_to_json(fixture(name));
    } else if (kind == "diagram") {
        data = diagram_to_json(diagram_fixture(name));
    } else {
        const auto fixtures = link_fixtures();
        auto it = std::find_if(fixtures.begin(), fixtures.end(), [&](const auto& f) { return f.name == name; });
        if (it == fixtures.end())
            throw InputError("unknown link fixture '" + name + "'");
        data = link_to_json(it->link);
        data["ambient"] = it->ambient;
    }
    if (out_path.empty()) {
        std::cout << data.dump() << '\n';
        return -1;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << data.dump() << '\n'))
        throw InputError("cannot write " + out_path);
    run.report["result"] = {{"name", name}, {"kind", kind}, {"written", out_path},
                            {"sha256", sha256_hex(data.dump() + "\n")}};
    run.line("wrote " + kind + " fixture " + name + " to " + out_path);
    return run.exit_code;
}

void emit(const Run& run, bool human, const std::string& out_path)
{
    std::ostringstream text;
    if (human) {
        for (const auto& s : run.summary)
            text << s << '\n';
        text << "exit code: " << run.exit_code << '\n';
    } else {
        text << run.report.dump(2) << '\n';
    }
    if (out_path.empty()) {
        std::cout << text.str();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text.str()))
        throw InputError("cannot write " + out_path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"flatlink: flag complexes, square links, cube complexes and linking obstructions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FLATLINK_VERSION);

    bool human = false;
    std::string report_out;
    auto add_common = [&](CLI::App* sub) {
        auto* h = sub->add_flag("--human", human, "plain-text summary instead of JSON");
        sub->add_flag("--json", "JSON report (default)")->excludes(h);
        sub->add_option("--report", report_out, "write the report to this file instead of stdout");
    };

    std::string complex_path, link_path, fixture_name, diagram_name, matrix_path, diagram_path, out_path;
    bool certified = false, homology = false, emit_complex = false, reverse_ambient = false;
    bool list = false, table = false;
    int radius = 0;
    std::string kind = "complex";
    BuildBudget budget;

    auto* verify = app.add_subcommand("verify", "check flag, isolated squares, homology 3-sphere, Caprace criterion");
    verify->add_option("complex", complex_path, "complex JSON file")->required();
    add_common(verify);

    auto* obstruct = app.add_subcommand("obstruct", "linking numbers of the squares and the obstruction verdict");
    obstruct->add_option("complex", complex_path, "complex JSON file")->required();
    obstruct->add_flag("--certify-nontrivial", certified, "the square link is known to be nontrivial");
    add_common(obstruct);

    auto* pk = app.add_subcommand("pk", "build the cube complex P_K");
    pk->add_option("complex", complex_path, "complex JSON file")->required();
    pk->add_flag("--homology", homology, "also compute cellular homology");
    pk->add_flag("--emit-complex", emit_complex, "include the cube complex in the report");
    pk->add_option("--out", report_out, "write the report to this file");
    auto* pk_h = pk->add_flag("--human", human, "plain-text summary instead of JSON");
    pk->add_flag("--json", "JSON report (default)")->excludes(pk_h);

    auto* davis = app.add_subcommand("davis", "ball of radius n in the Davis complex");
    davis->add_option("complex", complex_path, "complex JSON file")->required();
    davis->add_option("-n,--radius", radius, "word-length radius")->required()->check(CLI::Range(0, 64));
    davis->add_flag("--emit-complex", emit_complex, "include the cells in the report");
    add_common(davis);

    auto* lk = app.add_subcommand("lk", "linking numbers");
    lk->require_subcommand(1);
    auto* lk_s = lk->add_subcommand("simplicial", "complement-class linking matrix of edge cycles in a 3-sphere");
    lk_s->add_option("complex", complex_path, "ambient complex JSON file");
    lk_s->add_option("--link", link_path, "link JSON file (default: the squares of the complex)");
    lk_s->add_option("--fixture", fixture_name, "use a shipped link fixture instead of files");
    lk_s->add_flag("--reverse-ambient", reverse_ambient, "use the opposite ambient orientation");
    add_common(lk_s);
    auto* lk_d = lk->add_subcommand("diagram", "linking matrix of a planar diagram");
    lk_d->add_option("diagram", diagram_path, "diagram JSON file");
    lk_d->add_option("--fixture", fixture_name, "use a shipped diagram fixture");
    add_common(lk_d);

    auto* fix = app.add_subcommand("fixture", "print or write a shipped fixture");
    fix->add_option("name", fixture_name, "fixture name");
    fix->add_option("--kind", kind, "complex, diagram or link")->check(CLI::IsMember({"complex", "diagram", "link"}));
    fix->add_flag("--list", list, "list all fixtures");
    fix->add_flag("--table", table, "print the fixture property table");
    fix->add_option("--out", out_path, "write the fixture JSON here and report on stdout");
    add_common(fix);

    auto* build = app.add_subcommand("build", "search for a verified type-L triangulation");
    build->add_option("--matrix", matrix_path, "target linking matrix JSON file");
    build->add_option("--diagram-file", diagram_path, "target diagram JSON file");
    build->add_option("--diagram", diagram_name, "target diagram fixture name");
    build->add_option("--max-candidates", budget.max_candidates, "candidates to verify");
    build->add_option("--max-vertices", budget.max_vertices, "skip larger candidates")->check(CLI::NonNegativeNumber);
    build->add_option("--seed", budget.seed, "candidate order seed");
    build->add_flag("--emit-complex", emit_complex, "include the found complex in the report");
    add_common(build);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    Run run;
    Json command = Json::array();
    for (int i = 1; i < argc; ++i)
        command.push_back(argv[i]);
    run.report["command"] = command;
    run.report["version"] = FLATLINK_VERSION;
    run.report["seed"] = budget.seed;
    run.report["inputs"] = Json::object();

    const auto start = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        if (*verify)
            code = cmd_verify(run, complex_path);
        else if (*obstruct)
            code = cmd_obstruct(run, complex_path, certified);
        else if (*pk)
            code = cmd_pk(run, complex_path, homology, emit_complex);
        else if (*davis)
            code = cmd_davis(run, complex_path, radius, emit_complex);
        else if (*lk_s)
            code = cmd_lk_simplicial(run, complex_path, link_path, fixture_name, reverse_ambient);
        else if (*lk_d)
            code = cmd_lk_diagram(run, diagram_path, fixture_name);
        else if (*fix)
            code = cmd_fixture(run, fixture_name, list, table, out_path, kind);
        else if (*build)
            code = cmd_build(run, matrix_path, diagram_path, diagram_name, budget, emit_complex);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvariantError& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return exit_check_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (code < 0)
        return exit_ok;
    run.report["exit_code"] = code;
    run.report["timing"] = {
        {"elapsed_ms",
         std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
    try {
        emit(run, human, report_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return code;
}
