#include "tropfan/fanfile.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tropfan/util.hpp"

namespace tropfan {
namespace {

using nlohmann::json;

long long int_of(const json& j, const std::string& what) {
    if (!j.is_number_integer())
        throw InputError(what + " must be an integer, got " + j.dump());
    return j.get<long long>();
}

int index_of(const json& j, const std::string& what) {
    long long v = int_of(j, what);
    if (v < 0 || v > 1000000000)
        throw InputError(what + " out of range: " + std::to_string(v));
    return static_cast<int>(v);
}

IntVec vec_of(const json& j, int expected_len, const std::string& what) {
    if (!j.is_array())
        throw InputError(what + " must be an array of integers");
    if (static_cast<int>(j.size()) != expected_len)
        throw InputError(what + " has " + std::to_string(j.size()) +
                         " entries, expected " + std::to_string(expected_len));
    IntVec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.emplace_back(static_cast<long>(int_of(j[i], what + " entry " + std::to_string(i))));
    return v;
}

// Object keys used as indices must be plain base-10 integers.
int key_index(const std::string& key, int limit, const std::string& what) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(what + " key '" + key + "' is not a cone index");
    long long v = 0;
    for (char c : key) {
        v = v * 10 + (c - '0');
        if (v > 1000000000) throw InputError(what + " key '" + key + "' is out of range");
    }
    if (v >= limit)
        throw InputError(what + " key '" + key + "' exceeds the cone list (size " +
                         std::to_string(limit) + ")");
    return static_cast<int>(v);
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw InputError("unknown key '" + item.key() + "' in fan description");
}

LoadedFan fan_from_json(const json& j) {
    if (!j.is_object())
        throw InputError("fan description must be a JSON object");
    reject_unknown_keys(j, {"ambient_rank", "rays", "cones", "weights", "function", "product_of"});

    if (j.contains("product_of")) {
        for (const char* key : {"ambient_rank", "rays", "cones", "weights", "function"})
            if (j.contains(key))
                throw InputError(std::string("'product_of' cannot be combined with '") + key + "'");
        const json& pair = j["product_of"];
        if (!pair.is_array() || pair.size() != 2)
            throw InputError("'product_of' must be an array of two fan descriptions");
        LoadedFan a = fan_from_json(pair[0]);
        LoadedFan b = fan_from_json(pair[1]);
        if (a.function || b.function)
            throw InputError("product factors cannot carry a function");
        LoadedFan out;
        out.fan = std::make_shared<Fan>(product_fan(*a.fan, *b.fan));
        out.warnings = a.warnings;
        out.warnings.insert(out.warnings.end(), b.warnings.begin(), b.warnings.end());
        return out;
    }

    if (!j.contains("ambient_rank"))
        throw InputError("missing key 'ambient_rank'");
    RawFan raw;
    raw.ambient_rank = index_of(j["ambient_rank"], "'ambient_rank'");

    if (j.contains("rays")) {
        const json& rays = j["rays"];
        if (!rays.is_array()) throw InputError("'rays' must be an array");
        for (std::size_t i = 0; i < rays.size(); ++i)
            raw.rays.push_back(vec_of(rays[i], raw.ambient_rank, "ray " + std::to_string(i)));
    }
    if (j.contains("cones")) {
        const json& cones = j["cones"];
        if (!cones.is_array()) throw InputError("'cones' must be an array");
        for (std::size_t i = 0; i < cones.size(); ++i) {
            const json& c = cones[i];
            if (!c.is_array())
                throw InputError("cone " + std::to_string(i) + " must be an array of ray ids");
            std::vector<int> ids;
            for (std::size_t k = 0; k < c.size(); ++k)
                ids.push_back(index_of(c[k], "cone " + std::to_string(i) + " entry"));
            raw.cones.push_back(std::move(ids));
        }
    }
    // With an empty cone list the only possible facet is the implicit zero
    // cone; its weight goes under the key "0".
    std::optional<Int> zero_cone_weight;
    if (j.contains("weights")) {
        const json& w = j["weights"];
        if (!w.is_object()) throw InputError("'weights' must be an object");
        std::map<int, Int> weights;
        for (const auto& item : w.items()) {
            int limit = raw.cones.empty() ? 1 : static_cast<int>(raw.cones.size());
            int idx = key_index(item.key(), limit, "'weights'");
            Int val(static_cast<long>(int_of(item.value(), "weight '" + item.key() + "'")));
            if (raw.cones.empty())
                zero_cone_weight = val;
            else
                weights[idx] = val;
        }
        if (!weights.empty()) raw.weights = std::move(weights);
    }

    ValidationResult vr = validate_fan(raw);
    if (zero_cone_weight) vr.fan.set_weights(Orientation{{0, *zero_cone_weight}});
    LoadedFan out;
    out.fan = std::make_shared<Fan>(std::move(vr.fan));
    out.warnings = std::move(vr.warnings);

    if (j.contains("function")) {
        const json& fj = j["function"];
        if (!fj.is_object())
            throw InputError("'function' must be an object");
        reject_unknown_keys(fj, {"ray_values", "facet_forms"});
        if (fj.contains("ray_values") == fj.contains("facet_forms"))
            throw InputError("'function' needs exactly one of 'ray_values' or 'facet_forms'");
        if (fj.contains("ray_values")) {
            IntVec vals = vec_of(fj["ray_values"], out.fan->ray_count(), "'ray_values'");
            out.function = PLFunction::from_ray_values(out.fan, vals);
        } else {
            const json& ff = fj["facet_forms"];
            if (!ff.is_object()) throw InputError("'facet_forms' must be an object");
            std::map<int, IntVec> forms;
            for (const auto& item : ff.items()) {
                int idx = key_index(item.key(), static_cast<int>(raw.cones.size()), "'facet_forms'");
                forms[vr.input_cone_ids[idx]] =
                    vec_of(item.value(), raw.ambient_rank, "form '" + item.key() + "'");
            }
            out.function = PLFunction(out.fan, std::move(forms));
        }
    }
    return out;
}

long long ll_of(const Int& v, const std::string& what) {
    if (!v.fits_slong_p())
        throw CheckError(what + " does not fit a JSON integer");
    return v.get_si();
}

json vec_to_json(const IntVec& v, const std::string& what) {
    json a = json::array();
    for (const Int& x : v) a.push_back(ll_of(x, what));
    return a;
}

}  // namespace

LoadedFan parse_fan_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return fan_from_json(j);
}

LoadedFan load_fan_file(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open input file: " + path);
        buf << in.rdbuf();
    }
    return parse_fan_json(buf.str());
}

std::string fan_to_json(const Fan& f, const PLFunction* fn) {
    json j;
    j["ambient_rank"] = f.ambient_rank();
    json rays = json::array();
    for (int i = 0; i < f.ray_count(); ++i)
        rays.push_back(vec_to_json(f.ray(i), "ray " + std::to_string(i)));
    j["rays"] = std::move(rays);
    json cones = json::array();
    for (int id = 1; id < f.cone_count(); ++id)
        cones.push_back(f.cone(id).rays);
    j["cones"] = std::move(cones);
    if (f.weights()) {
        json w = json::object();
        for (const auto& [id, wt] : *f.weights())
            w[id == 0 ? "0" : std::to_string(id - 1)] =
                ll_of(wt, "weight of cone " + std::to_string(id));
        j["weights"] = std::move(w);
    }
    if (fn) {
        json fj = json::object();
        fj["ray_values"] = vec_to_json(fn->ray_values(), "ray values");
        j["function"] = std::move(fj);
    }
    return j.dump(2) + "\n";
}

std::string table_to_json(const HomologyTable& t) {
    json j;
    j["dims"] = t.dims;
    return j.dump(2) + "\n";
}

std::string table_to_text(const HomologyTable& t) {
    const int np = static_cast<int>(t.dims.size());
    const int nq = np ? static_cast<int>(t.dims[0].size()) : 0;
    std::size_t width = 3;  // fits the "p\q" corner
    for (const auto& row : t.dims)
        for (int v : row) width = std::max(width, std::to_string(v).size());
    for (int q = 0; q < nq; ++q) width = std::max(width, std::to_string(q).size());
    auto cell = [&](const std::string& s) {
        return std::string(width - s.size(), ' ') + s;
    };
    std::ostringstream out;
    out << cell("p\\q");
    for (int q = 0; q < nq; ++q) out << "  " << cell(std::to_string(q));
    out << "\n";
    for (int p = 0; p < np; ++p) {
        out << cell(std::to_string(p));
        for (int q = 0; q < nq; ++q) out << "  " << cell(std::to_string(t.dims[p][q]));
        out << "\n";
    }
    return out.str();
}

}  // namespace tropfan
