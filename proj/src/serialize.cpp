#include "pathclust/serialize.hpp"

#include <stdexcept>

namespace pathclust {

void to_json(nlohmann::json& j, const HamiltonianPath& p) {
    j = nlohmann::json{{"start", p.start},
                       {"order", p.order},
                       {"gaps", std::vector<double>(p.gaps.begin(), p.gaps.end())}};
}

void from_json(const nlohmann::json& j, HamiltonianPath& p) {
    p.start = j.at("start").get<Index>();
    p.order = j.at("order").get<std::vector<Index>>();
    const auto gaps = j.at("gaps").get<std::vector<double>>();
    p.gaps = Eigen::Map<const Vector>(gaps.data(), static_cast<Index>(gaps.size()));
    if (p.order.size() != gaps.size() + 1)
        throw std::invalid_argument("path: order/gaps length mismatch");
}

nlohmann::json serialize_changepoints(const ChangePointSet& cps, const nlohmann::json& params) {
    nlohmann::json j{{"detector", detector_name(cps.kind)},
                     {"positions", cps.positions},
                     {"scores", cps.scores},
                     {"params", params}};
    if (!cps.directions.empty()) {
        std::vector<std::string> dirs;
        dirs.reserve(cps.directions.size());
        for (auto d : cps.directions) dirs.push_back(d == CpDirection::Upper ? "upper" : "lower");
        j["directions"] = dirs;
    }
    return j;
}

ChangePointSet deserialize_changepoints(const nlohmann::json& j) {
    ChangePointSet cps;
    cps.kind = detector_from_name(j.at("detector").get<std::string>());
    cps.positions = j.at("positions").get<std::vector<int>>();
    cps.scores = j.at("scores").get<std::vector<double>>();
    if (j.contains("directions")) {
        for (const auto& d : j.at("directions"))
            cps.directions.push_back(d.get<std::string>() == "upper" ? CpDirection::Upper
                                                                     : CpDirection::Lower);
    }
    return cps;
}

void to_json(nlohmann::json& j, const ClusterLabeling& l) {
    j = nlohmann::json{{"k", l.k}, {"labels", l.labels}};
}

void from_json(const nlohmann::json& j, ClusterLabeling& l) {
    l.k = j.at("k").get<int>();
    l.labels = j.at("labels").get<std::vector<int>>();
}

void to_json(nlohmann::json& j, const AmiReport& r) {
    std::vector<std::vector<std::int64_t>> table;
    for (Eigen::Index i = 0; i < r.contingency.rows(); ++i) {
        std::vector<std::int64_t> row;
        for (Eigen::Index c = 0; c < r.contingency.cols(); ++c) row.push_back(r.contingency(i, c));
        table.push_back(std::move(row));
    }
    j = nlohmann::json{{"ami", r.ami},
                       {"mi", r.mi},
                       {"expected_mi", r.expected_mi},
                       {"entropy_a", r.entropy_a},
                       {"entropy_b", r.entropy_b},
                       {"contingency", table}};
}

}  // namespace pathclust
