#include "djet/configio.hpp"

#include <fstream>

namespace djet {

using nlohmann::json;

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("complex value must be [re, im] or a number, got " + j.dump());
}

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

GeneratorSet generator_set_from_json(const json& j) {
    GeneratorSet gens;
    const json& gl = j.at("generators");
    if (!gl.is_array() || gl.empty())
        throw std::invalid_argument("\"generators\" must be a non-empty array");
    for (const json& g : gl)
        gens.generators.emplace_back(complex_from_json(g.at("alpha")),
                                     complex_from_json(g.at("beta")));
    if (j.contains("relations")) {
        for (const json& r : j.at("relations")) {
            std::vector<int> word;
            for (const json& v : r) {
                if (!v.is_number_integer())
                    throw std::invalid_argument("relation entries must be integers");
                word.push_back(v.get<int>());
            }
            gens.relations.push_back(std::move(word));
        }
    }
    gens.validate();
    return gens;
}

namespace {

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open " + file.string());
    return json::parse(in);  // throws json::parse_error with line info
}

}  // namespace

GeneratorSet load_generator_set(const std::filesystem::path& file) {
    return generator_set_from_json(load_json(file));
}

NDifferential ndifferential_from_json(const json& j, const std::filesystem::path& base_dir,
                                      int fallback_order) {
    int order = fallback_order;
    if (j.contains("order")) order = j.at("order").get<int>();
    if (order < 0) throw std::invalid_argument("differential: \"order\" missing or negative");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power_series") {
        std::vector<cplx> coeffs;
        for (const json& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
        return NDifferential::power_series(order, std::move(coeffs));
    }
    if (kind == "poincare") {
        int L = j.at("word_length").get<int>();
        std::filesystem::path ref = j.at("generators_ref").get<std::string>();
        if (ref.is_relative()) ref = base_dir / ref;
        auto ball = std::make_shared<GroupBall>(enumerate_ball(load_generator_set(ref), L));
        return NDifferential::poincare(order, std::move(ball));
    }
    throw std::invalid_argument("differential: unknown kind \"" + kind + "\"");
}

KernelConfig kernel_config_from_json(const json& j, const std::filesystem::path& base_dir) {
    KernelConfig cfg;
    cfg.basis.genus = j.at("genus").get<int>();
    cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("families")) {
        for (const json& f : j.at("families")) {
            int order = f.at("order").get<int>();
            NDifferential psi = ndifferential_from_json(f.at("psi"), base_dir, order);
            if (psi.order() != order)
                throw std::invalid_argument("kernel family: psi order disagrees with family order");
            cfg.basis.families.push_back({std::move(psi), f.at("sq_norm").get<double>()});
        }
    }
    return cfg;
}

KernelConfig load_kernel_config(const std::filesystem::path& file) {
    return kernel_config_from_json(load_json(file), file.parent_path());
}

}  // namespace djet
