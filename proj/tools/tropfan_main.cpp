// Command-line interface: loads a fan from a built-in example or a JSON
// description, runs one computation per process, and reports on stdout
// (JSON with --json, aligned text otherwise).  Diagnostics go to stderr.
// Exit codes: 0 computed and all asserted checks passed, 1 computed with a
// failing mathematical verdict, 2 malformed input or usage.

#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropfan/chow.hpp"
#include "tropfan/deligne.hpp"
#include "tropfan/fanfile.hpp"
#include "tropfan/homology.hpp"
#include "tropfan/util.hpp"
#include "tropfan/weights.hpp"
#include "tropfan/zoo.hpp"

using json = nlohmann::json;
using namespace tropfan;

namespace {

struct Source {
    std::string example;
    std::string input;
    std::string function_name;
    bool as_json = false;
};

void add_source(CLI::App* cmd, Source& src, bool with_function = true) {
    cmd->add_option("--example", src.example,
                    "built-in example name (list them with `tropfan examples`)");
    cmd->add_option("--input", src.input, "JSON fan description file, or '-' for stdin");
    cmd->add_flag("--json", src.as_json, "machine-readable JSON report");
    if (with_function)
        cmd->add_option("--function", src.function_name,
                        "named function of a built-in example");
}

struct Loaded {
    std::shared_ptr<const Fan> fan;
    std::optional<PLFunction> function;
};

Loaded load(const Source& src) {
    if (src.example.empty() == src.input.empty())
        throw InputError("choose exactly one input source: --example NAME or --input FILE");
    Loaded out;
    if (!src.example.empty()) {
        ZooEntry entry = zoo_fan(src.example);
        out.fan = entry.fan;
        if (!src.function_name.empty()) {
            auto it = entry.functions.find(src.function_name);
            if (it == entry.functions.end()) {
                std::string names;
                for (const auto& [name, vals] : entry.functions)
                    names += (names.empty() ? "" : ", ") + name;
                throw InputError("example '" + src.example + "' has no function named '" +
                                 src.function_name + "'" +
                                 (names.empty() ? "" : " (available: " + names + ")"));
            }
            out.function = PLFunction::from_ray_values(out.fan, it->second);
        }
    } else {
        if (!src.function_name.empty())
            throw InputError("--function selects a named function of a built-in example; "
                             "file input carries its function in the 'function' key");
        LoadedFan lf = load_fan_file(src.input);
        for (const std::string& w : lf.warnings) std::cerr << "warning: " << w << "\n";
        out.fan = lf.fan;
        out.function = std::move(lf.function);
    }
    return out;
}

const PLFunction& require_function(const Loaded& l) {
    if (!l.function)
        throw InputError("this command needs a conewise linear function; embed one in the "
                         "input file or pass --function NAME with --example");
    return *l.function;
}

void emit(const Source& src, const json& report, const std::string& text) {
    if (src.as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string join_ints(const std::vector<int>& v, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

json fan_as_json(const Fan& f, const PLFunction* fn = nullptr) {
    return json::parse(fan_to_json(f, fn));
}

// Structural summary shared by `validate` and `info`; balancing is asserted
// whenever weights are present.
int summarize(const Source& src, const Loaded& l, bool detailed) {
    const Fan& f = *l.fan;
    json j;
    std::ostringstream text;
    j["ambient_rank"] = f.ambient_rank();
    j["dim"] = f.dim();
    j["rays"] = f.ray_count();
    j["cones"] = f.cone_count();
    j["pure"] = f.pure();
    j["simplicial"] = f.simplicial();
    j["weighted"] = f.weights().has_value();
    text << "ambient rank: " << f.ambient_rank() << "\n"
         << "dimension:    " << f.dim() << "\n"
         << "rays:         " << f.ray_count() << "\n"
         << "cones:        " << f.cone_count() << " (including the zero cone)\n"
         << "pure:         " << yesno(f.pure()) << "\n"
         << "simplicial:   " << yesno(f.simplicial()) << "\n"
         << "weighted:     " << yesno(f.weights().has_value()) << "\n";
    bool pass = true;
    if (f.weights()) {
        BalancingReport rep = check_balancing(f);
        pass = rep.balanced;
        j["balanced"] = rep.balanced;
        j["violations"] = rep.violations;
        text << "balanced:     " << yesno(rep.balanced);
        if (!rep.balanced) text << " (violations at: " << join_ints(rep.violations) << ")";
        text << "\n";
    }
    if (detailed) {
        j["unimodular"] = is_unimodular(f);
        j["product"] = f.product_structure().has_value();
        json cones = json::array();
        text << "unimodular:   " << yesno(is_unimodular(f)) << "\n"
             << "product:      " << yesno(f.product_structure().has_value()) << "\n"
             << "cones (id: dim [rays] weight):\n";
        for (int id = 0; id < f.cone_count(); ++id) {
            const Cone& c = f.cone(id);
            json jc;
            jc["id"] = id;
            jc["dim"] = c.dim;
            jc["rays"] = c.rays;
            text << "  " << id << ": dim " << c.dim << " [" << join_ints(c.rays) << "]";
            if (f.weights()) {
                auto it = f.weights()->find(id);
                if (it != f.weights()->end()) {
                    jc["weight"] = static_cast<long long>(it->second.get_si());
                    text << " w=" << it->second.get_str();
                }
            }
            text << "\n";
            cones.push_back(std::move(jc));
        }
        j["cone_list"] = std::move(cones);
    }
    j["pass"] = pass;
    text << "verdict:      " << (pass ? "PASS" : "FAIL") << "\n";
    emit(src, j, text.str());
    return pass ? 0 : 1;
}

int cmd_balancing(const Source& src) {
    Loaded l = load(src);
    if (!l.fan->weights())
        throw InputError("balancing requires facet weights");
    BalancingReport rep = check_balancing(*l.fan);
    json j;
    j["balanced"] = rep.balanced;
    j["violations"] = rep.violations;
    j["pass"] = rep.balanced;
    std::ostringstream text;
    text << "balanced: " << yesno(rep.balanced) << "\n";
    if (!rep.balanced)
        text << "violations at codimension-1 cones: " << join_ints(rep.violations) << "\n";
    emit(src, j, text.str());
    return rep.balanced ? 0 : 1;
}

// Commands that produce a fan print its canonical JSON as the text report so
// the output can be piped back through --input -.
int emit_fan(const Source& src, const Fan& f, const PLFunction* fn, json metadata) {
    if (src.as_json) {
        metadata["fan"] = fan_as_json(f, fn);
        std::cout << metadata.dump(2) << "\n";
    } else {
        std::cout << fan_to_json(f, fn);
    }
    return 0;
}

int cmd_star(const Source& src, int cone_id) {
    Loaded l = load(src);
    if (cone_id < 0 || cone_id >= l.fan->cone_count())
        throw InputError("no cone with id " + std::to_string(cone_id) +
                         " (the fan has cones 0.." + std::to_string(l.fan->cone_count() - 1) + ")");
    StarData star = star_fan(*l.fan, cone_id);
    json meta;
    meta["base_cone"] = cone_id;
    meta["ambient_rank"] = star.fan.ambient_rank();
    return emit_fan(src, star.fan, nullptr, std::move(meta));
}

int cmd_product(const Source& src, const Source& right_src) {
    Loaded a = load(src);
    Loaded b = load(right_src);
    Fan prod = product_fan(*a.fan, *b.fan);
    return emit_fan(src, prod, nullptr, json::object());
}

int cmd_divisor(const Source& src) {
    Loaded l = load(src);
    Divisor div = divisor(require_function(l));
    json meta;
    meta["empty"] = div.empty();
    json orders = json::object();
    for (const auto& [cone, ord] : div.orders)
        orders[std::to_string(cone)] = static_cast<long long>(ord.get_si());
    meta["orders_by_base_cone"] = std::move(orders);
    if (!src.as_json && div.empty())
        std::cerr << "note: the function is linear along every codimension-1 cone; "
                     "the divisor is empty\n";
    return emit_fan(src, div.fan, nullptr, std::move(meta));
}

int cmd_modify(const Source& src) {
    Loaded l = load(src);
    const PLFunction& fn = require_function(l);
    Modification mod = tropical_modification(fn);
    std::optional<PLFunction> induced;
    if (mod.fan.simplicial()) {
        auto fan_ptr = std::make_shared<Fan>(mod.fan);
        induced = PLFunction::from_ray_values(fan_ptr, mod.induced_values(fn.ray_values()));
    }
    json meta;
    meta["special_ray"] = mod.rho_ray;
    meta["divisor_empty"] = mod.div.empty();
    return emit_fan(src, mod.fan, induced ? &*induced : nullptr, std::move(meta));
}

CellSpace make_space(const Loaded& l, const std::string& space) {
    if (space == "fan") return fan_space(l.fan);
    if (space == "compactification") return compactified_space(l.fan);
    if (space.rfind("open:", 0) == 0) {
        std::set<int> seds;
        std::string rest = space.substr(5);
        std::istringstream in(rest);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                std::size_t used = 0;
                int id = std::stoi(tok, &used);
                if (used != tok.size() || id < 0 || id >= l.fan->cone_count())
                    throw std::invalid_argument(tok);
                seds.insert(id);
            } catch (const std::exception&) {
                throw InputError("bad sedentarity cone id '" + tok + "' in --space " + space);
            }
        }
        if (seds.empty()) throw InputError("--space open: needs at least one cone id");
        return semi_open_space(l.fan, seds);
    }
    throw InputError("unknown space '" + space + "' (use fan, compactification, or open:IDS)");
}

int cmd_homology(const Source& src, const std::string& theory_name, const std::string& space_name,
                 const std::string& p_arg) {
    static const std::map<std::string, Theory> theories = {
        {"ordinary", Theory::ordinary},
        {"bm", Theory::borel_moore},
        {"compact", Theory::compact_support}};
    auto it = theories.find(theory_name);
    if (it == theories.end())
        throw InputError("unknown theory '" + theory_name + "' (use ordinary, bm, or compact)");
    Loaded l = load(src);
    CellSpace space = make_space(l, space_name);
    HomologyTable table = homology_table(space, it->second);
    json j;
    j["theory"] = theory_name;
    j["space"] = space_name;
    std::ostringstream text;
    text << "theory: " << theory_name << "\n"
         << "space:  " << space_name << "\n";
    if (p_arg == "all") {
        j["dims"] = table.dims;
        text << table_to_text(table);
    } else {
        int p = -1;
        try {
            std::size_t used = 0;
            p = std::stoi(p_arg, &used);
            if (used != p_arg.size()) p = -1;
        } catch (const std::exception&) {
        }
        if (p < 0 || p >= static_cast<int>(table.dims.size()))
            throw InputError("--p must be 'all' or an integer in 0.." +
                             std::to_string(table.dims.size() - 1));
        j["p"] = p;
        j["dims"] = table.dims[p];
        text << "p = " << p << ": " << join_ints(table.dims[p], " ") << "\n";
    }
    emit(src, j, text.str());
    return 0;
}

int cmd_pd(const Source& src) {
    Loaded l = load(src);
    PDReport rep = pd_check(l.fan);
    json j;
    j["pass"] = rep.pass;
    j["vanishing"] = rep.vanishing;
    j["bm_dims"] = rep.bm.dims;
    json caps = json::array();
    std::ostringstream text;
    text << "vanishing outside the top row: " << yesno(rep.vanishing) << "\n"
         << "degree-zero caps:\n";
    for (std::size_t p = 0; p < rep.caps.size(); ++p) {
        const CapReport& cap = rep.caps[p];
        json jc;
        jc["p"] = static_cast<int>(p);
        jc["source_dim"] = cap.source_dim;
        jc["target_dim"] = cap.target_dim;
        jc["injective"] = cap.injective;
        jc["surjective"] = cap.surjective;
        caps.push_back(std::move(jc));
        text << "  p=" << p << ": dim " << cap.source_dim << " -> dim " << cap.target_dim
             << ", injective " << yesno(cap.injective) << ", surjective "
             << yesno(cap.surjective) << "\n";
    }
    j["caps"] = std::move(caps);
    text << "verdict: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    emit(src, j, text.str());
    return rep.pass ? 0 : 1;
}

int cmd_smooth(const Source& src, const std::string& criterion) {
    SmoothCriterion crit;
    if (criterion == "local")
        crit = SmoothCriterion::local;
    else if (criterion == "aksnes")
        crit = SmoothCriterion::aksnes;
    else
        throw InputError("unknown criterion '" + criterion + "' (use local or aksnes)");
    Loaded l = load(src);
    SmoothReport rep = smooth_check(l.fan, crit);
    json j;
    j["criterion"] = criterion;
    j["smooth"] = rep.smooth;
    j["pass"] = rep.smooth;
    std::vector<int> failing;
    for (const auto& [cone, ok] : rep.per_cone)
        if (!ok) failing.push_back(cone);
    j["failing_cones"] = failing;
    std::ostringstream text;
    text << "criterion: " << criterion << "\n";
    if (!failing.empty()) text << "failing stars at cones: " << join_ints(failing) << "\n";
    text << "verdict: " << (rep.smooth ? "SMOOTH (PASS)" : "NOT SMOOTH (FAIL)") << "\n";
    emit(src, j, text.str());
    return rep.smooth ? 0 : 1;
}

int cmd_chow(const Source& src) {
    Loaded l = load(src);
    PairingReport rep = chow_pd_check(l.fan);
    json j;
    j["dims"] = rep.dims;
    j["pairing_mode"] = rep.pairing_mode;
    j["notes"] = rep.notes;
    j["pass"] = rep.pass;
    std::ostringstream text;
    text << "graded dimensions: " << join_ints(rep.dims, " ") << "\n"
         << "mode: " << (rep.pairing_mode ? "degree pairing" : "dimension symmetry") << "\n";
    for (const std::string& n : rep.notes) text << "note: " << n << "\n";
    text << "verdict: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    emit(src, j, text.str());
    return rep.pass ? 0 : 1;
}

int cmd_fy(const Source& src) {
    Loaded l = load(src);
    FYReport rep = fy_crosscheck(l.fan);
    json j;
    j["chow_dims"] = rep.chow;
    j["cohomology"] = rep.cohomology.dims;
    j["failures"] = rep.failures;
    j["pass"] = rep.pass;
    std::ostringstream text;
    text << "graded dimensions: " << join_ints(rep.chow, " ") << "\n"
         << "cohomology of the compactification:\n"
         << table_to_text(rep.cohomology);
    for (const std::string& f : rep.failures) text << "failure: " << f << "\n";
    text << "verdict: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    emit(src, j, text.str());
    return rep.pass ? 0 : 1;
}

int cmd_deligne(const Source& src, int p, const std::string& mode_name) {
    DeligneMode mode;
    if (mode_name == "euler")
        mode = DeligneMode::euler;
    else if (mode_name == "full")
        mode = DeligneMode::full;
    else
        throw InputError("unknown mode '" + mode_name + "' (use euler or full)");
    Loaded l = load(src);
    DeligneReport rep = deligne_sequence(l.fan, p, mode);
    json j;
    j["p"] = rep.p;
    j["k"] = rep.k;
    j["mode"] = mode_name;
    j["dims"] = rep.dims;
    j["euler"] = rep.euler;
    j["lattice_dim"] = rep.lattice_dim;
    std::ostringstream text;
    text << "p: " << rep.p << "\n"
         << "k: " << rep.k << "\n"
         << "sequence dims: " << join_ints(rep.dims, " ") << "\n"
         << "euler characteristic: " << rep.euler << "\n";
    if (rep.full) {
        j["cohomology"] = rep.cohomology;
        j["final_dim"] = rep.final_dim;
        text << "cohomology at positions a=0..: " << join_ints(rep.cohomology, " ") << "\n"
             << "final cohomology: " << rep.final_dim << " (coefficient space dimension "
             << rep.lattice_dim << ")\n";
    }
    j["notes"] = rep.notes;
    j["pass"] = rep.pass;
    for (const std::string& n : rep.notes) text << "note: " << n << "\n";
    text << "verdict: " << (rep.pass ? "EXACT (PASS)" : "NOT EXACT (FAIL)") << "\n";
    emit(src, j, text.str());
    return rep.pass ? 0 : 1;
}

json verify_as_json(const VerifyReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["failures"] = rep.failures;
    j["notes"] = rep.notes;
    return j;
}

void verify_as_text(std::ostringstream& text, const std::string& label, const VerifyReport& rep) {
    text << label << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (!rep.hypothesis_ok) text << "  (hypothesis violated: the base fan is not smooth)\n";
    for (const std::string& f : rep.failures) text << "  failure: " << f << "\n";
    for (const std::string& n : rep.notes) text << "  note: " << n << "\n";
}

int cmd_verify_tm(const Source& src) {
    Loaded l = load(src);
    const PLFunction& fn = require_function(l);
    VerifyReport coeff = verify_tm_coefficients(fn);
    VerifyReport hom = verify_tm_homology(fn);
    bool pass = coeff.pass && hom.pass;
    json j;
    j["coefficients"] = verify_as_json(coeff);
    j["homology"] = verify_as_json(hom);
    j["pass"] = pass;
    std::ostringstream text;
    verify_as_text(text, "coefficient identities", coeff);
    verify_as_text(text, "homology identities", hom);
    text << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    emit(src, j, text.str());
    return pass ? 0 : 1;
}

int cmd_examples(const Source& src, const std::string& name) {
    if (name.empty()) {
        std::vector<std::string> names = zoo_names();
        if (src.as_json) {
            std::cout << json(names).dump(2) << "\n";
        } else {
            for (const std::string& n : names) std::cout << n << "\n";
        }
        return 0;
    }
    ZooEntry entry = zoo_fan(name);
    std::optional<PLFunction> fn;
    if (!entry.functions.empty())
        fn = PLFunction::from_ray_values(entry.fan, entry.functions.begin()->second);
    std::cout << fan_to_json(*entry.fan, fn ? &*fn : nullptr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations with weighted rational fans: balancing, divisors,\n"
                 "modifications, compactified (co)homology, duality and smoothness\n"
                 "checks, Chow rings, and resolution diagnostics"};
    app.require_subcommand(1);

    Source src;
    int cone_id = 0;
    Source right_src;
    std::string theory = "bm";
    std::string space = "fan";
    std::string p_arg = "all";
    std::string criterion = "local";
    int deligne_p = 0;
    std::string mode = "full";
    std::string example_name;

    int rc = 0;

    CLI::App* validate = app.add_subcommand("validate", "check a fan description");
    add_source(validate, src, false);
    validate->callback([&] { rc = summarize(src, load(src), false); });

    CLI::App* info = app.add_subcommand("info", "structural summary with the cone list");
    add_source(info, src, false);
    info->callback([&] { rc = summarize(src, load(src), true); });

    CLI::App* balancing = app.add_subcommand("balancing", "verify the balancing condition");
    add_source(balancing, src, false);
    balancing->callback([&] { rc = cmd_balancing(src); });

    CLI::App* star = app.add_subcommand("star", "star fan at a cone, in quotient coordinates");
    add_source(star, src, false);
    star->add_option("--cone", cone_id, "cone id (see `info`)")->required();
    star->callback([&] { rc = cmd_star(src, cone_id); });

    CLI::App* product = app.add_subcommand("product", "product with a second fan");
    add_source(product, src, false);
    product->add_option("--with-example", right_src.example, "right factor: example name");
    product->add_option("--with-input", right_src.input, "right factor: description file");
    product->callback([&] { rc = cmd_product(src, right_src); });

    CLI::App* div = app.add_subcommand("divisor", "divisor of a conewise linear function");
    add_source(div, src);
    div->callback([&] { rc = cmd_divisor(src); });

    CLI::App* modify = app.add_subcommand("modify", "tropical modification along a function");
    add_source(modify, src);
    modify->callback([&] { rc = cmd_modify(src); });

    CLI::App* homology = app.add_subcommand("homology", "(co)homology dimension tables");
    add_source(homology, src, false);
    homology->add_option("--theory", theory, "ordinary, bm, or compact (default bm)");
    homology->add_option("--space", space,
                         "fan, compactification, or open:IDS with comma-separated "
                         "sedentarity cone ids (default fan)");
    homology->add_option("-p,--p", p_arg, "coefficient degree, or 'all' (default)");
    homology->callback([&] { rc = cmd_homology(src, theory, space, p_arg); });

    CLI::App* pd = app.add_subcommand("pd", "Poincare duality via degree-zero cap maps");
    add_source(pd, src, false);
    pd->callback([&] { rc = cmd_pd(src); });

    CLI::App* smooth = app.add_subcommand("smooth", "smoothness of all stars");
    add_source(smooth, src, false);
    smooth->add_option("--criterion", criterion, "local or aksnes (default local)");
    smooth->callback([&] { rc = cmd_smooth(src, criterion); });

    CLI::App* chow = app.add_subcommand("chow", "Chow ring dimensions and duality pairing");
    add_source(chow, src, false);
    chow->callback([&] { rc = cmd_chow(src); });

    CLI::App* fy = app.add_subcommand("fy", "Chow ring against the compactified cohomology");
    add_source(fy, src, false);
    fy->callback([&] { rc = cmd_fy(src); });

    CLI::App* deligne = app.add_subcommand("deligne", "resolution sequence diagnostics");
    add_source(deligne, src, false);
    deligne->add_option("-p,--p", deligne_p, "coefficient degree to resolve")->required();
    deligne->add_option("--mode", mode, "euler or full (default full)");
    deligne->callback([&] { rc = cmd_deligne(src, deligne_p, mode); });

    CLI::App* verify_tm = app.add_subcommand(
        "verify-tm", "dimension identities of the tropical modification along a function");
    add_source(verify_tm, src);
    verify_tm->callback([&] { rc = cmd_verify_tm(src); });

    CLI::App* examples =
        app.add_subcommand("examples", "list built-in examples, or print one as JSON");
    examples->add_option("name", example_name, "example to print");
    examples->add_flag("--json", src.as_json, "machine-readable list");
    examples->callback([&] { rc = cmd_examples(src, example_name); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
