#include "diew/core/serialize.hpp"

#include <cmath>

namespace diew::serialize {

nlohmann::json cmatrix_to_json(const qlin::CMatrix& m) {
    const Eigen::Index dim = m.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < dim; ++r) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < dim; ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"n_qubits", m.n_qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

qlin::CMatrix cmatrix_from_json(const nlohmann::json& j) {
    const int n = j.at("n_qubits").get<int>();
    if (n < 0 || n > 30) throw std::invalid_argument("n_qubits out of range");
    const Eigen::Index dim = Eigen::Index{1} << n;
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != static_cast<size_t>(dim) || im.size() != static_cast<size_t>(dim)) {
        throw std::invalid_argument("re/im row count does not match n_qubits");
    }
    qlin::EigenMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto& re_row = re.at(r);
        const auto& im_row = im.at(r);
        if (re_row.size() != static_cast<size_t>(dim) || im_row.size() != static_cast<size_t>(dim)) {
            throw std::invalid_argument("re/im column count does not match n_qubits");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = qlin::Complex{re_row.at(c).get<double>(), im_row.at(c).get<double>()};
        }
    }
    return qlin::CMatrix::from_eigen(n, std::move(m));
}

nlohmann::json swap_result_to_json(const network::SwapResult& result, bool embed_state) {
    nlohmann::json j;
    j["pattern"] = {states::bell_label(result.pattern[0]), states::bell_label(result.pattern[1]),
                    states::bell_label(result.pattern[2])};
    j["probability"] = result.probability;
    if (result.conditional.has_value()) {
        j["correction"] = {network::pauli_op_label(result.correction[0]),
                           network::pauli_op_label(result.correction[1]),
                           network::pauli_op_label(result.correction[2])};
        j["matched_sign"] = result.matched_sign == network::MatchedSign::none
                                ? "none"
                                : std::string(1, network::matched_sign_char(result.matched_sign));
        j["match_distance"] = result.match_distance;
        if (embed_state) {
            j["corrected"] = cmatrix_to_json(*result.corrected);
        }
    }
    return j;
}

}  // namespace diew::serialize
