#include "nmland/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nmland {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

void check_version(const json& doc) {
    if (!doc.contains("format_version") || doc["format_version"].get<int>() != kFormatVersion)
        throw std::invalid_argument("unsupported or missing format_version");
}

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw std::invalid_argument("malformed document");
    return doc;
}

Alphabet alphabet_from_json(const json& j) {
    Alphabet alphabet;
    alphabet.a = j.at("a").get<double>();
    alphabet.b = j.at("b").get<double>();
    const auto& arity = j.at("arity");
    if (arity.is_string()) {
        if (arity.get<std::string>() != "real") throw std::invalid_argument("bad arity marker");
        alphabet.arity = Alphabet::kRealArity;
    } else {
        alphabet.arity = arity.get<int>();
    }
    alphabet.validate();
    return alphabet;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string to_document(const InteractionModel& m) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": " << kFormatVersion << ",\n";
    out << "  \"kind\": \"" << kind_name(m.kind) << "\",\n";
    out << "  \"n\": " << m.n << ",\n";
    out << "  \"m\": " << m.term_count() << ",\n";
    out << "  \"max_order\": " << m.max_order() << ",\n";
    out << "  \"sigma\": " << format_double(m.sigma) << ",\n";
    out << "  \"seed\": " << m.seed << ",\n";
    out << "  \"alphabet\": {\"a\": " << format_double(m.alphabet.a)
        << ", \"b\": " << format_double(m.alphabet.b) << ", \"arity\": ";
    if (m.alphabet.real_valued()) out << "\"real\"";
    else out << m.alphabet.arity;
    out << "},\n";
    out << "  \"terms\": [";
    for (std::size_t k = 0; k < m.terms.size(); ++k) {
        const Term& t = m.terms[k];
        out << (k == 0 ? "\n" : ",\n") << "    {\"indices\": [";
        for (std::size_t i = 0; i < t.indices.size(); ++i)
            out << (i == 0 ? "" : ", ") << t.indices[i];
        out << "], \"coeff\": " << format_double(t.coeff) << "}";
    }
    out << (m.terms.empty() ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

InteractionModel model_from_document(const std::string& text) {
    const json doc = parse(text);
    check_version(doc);
    InteractionModel m;
    m.kind = kind_from_name(doc.at("kind").get<std::string>());
    m.n = doc.at("n").get<int>();
    m.sigma = doc.at("sigma").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.alphabet = alphabet_from_json(doc.at("alphabet"));
    for (const json& jt : doc.at("terms")) {
        Term t;
        t.indices = jt.at("indices").get<std::vector<int>>();
        t.coeff = jt.at("coeff").get<double>();
        m.terms.push_back(std::move(t));
    }
    if (doc.at("m").get<int>() != m.term_count())
        throw std::invalid_argument("declared term count does not match the term list");
    if (doc.at("max_order").get<int>() != m.max_order())
        throw std::invalid_argument("declared max_order does not match the term list");
    validate_model(m);
    return m;
}

std::string to_document(const WalshPolynomial& w) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": " << kFormatVersion << ",\n";
    out << "  \"q\": " << w.q << ",\n";
    out << "  \"omega\": [";
    for (std::size_t k = 0; k < w.omega.size(); ++k)
        out << (k == 0 ? "\n" : ",\n") << "    {\"j\": " << w.omega[k].first
            << ", \"coeff\": " << format_double(w.omega[k].second) << "}";
    out << (w.omega.empty() ? "]" : "\n  ]") << "\n}\n";
    return out.str();
}

WalshPolynomial walsh_from_document(const std::string& text) {
    const json doc = parse(text);
    check_version(doc);
    WalshPolynomial w;
    w.q = doc.at("q").get<int>();
    for (const json& jo : doc.at("omega"))
        w.omega.emplace_back(jo.at("j").get<std::uint64_t>(), jo.at("coeff").get<double>());
    validate_walsh(w);
    return w;
}

std::string to_document(const NKLandscape& nk) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": " << kFormatVersion << ",\n";
    out << "  \"n\": " << nk.n << ",\n";
    out << "  \"k\": " << nk.k << ",\n";
    out << "  \"seed\": " << nk.seed << ",\n";
    // 1-based loci; table rows keyed with the locus bit high, neighbor bits
    // following in list order.
    out << "  \"neighbors\": [";
    for (int locus = 0; locus < nk.n; ++locus) {
        out << (locus == 0 ? "\n" : ",\n") << "    [";
        const auto& nbrs = nk.neighbors[locus];
        for (std::size_t i = 0; i < nbrs.size(); ++i) out << (i == 0 ? "" : ", ") << nbrs[i] + 1;
        out << "]";
    }
    out << "\n  ],\n";
    out << "  \"tables\": [";
    for (int locus = 0; locus < nk.n; ++locus) {
        out << (locus == 0 ? "\n" : ",\n") << "    [";
        const auto& table = nk.tables[locus];
        for (std::size_t i = 0; i < table.size(); ++i)
            out << (i == 0 ? "" : ", ") << format_double(table[i]);
        out << "]";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

NKLandscape nk_from_document(const std::string& text) {
    const json doc = parse(text);
    check_version(doc);
    NKLandscape nk;
    nk.n = doc.at("n").get<int>();
    nk.k = doc.at("k").get<int>();
    nk.seed = doc.at("seed").get<std::uint64_t>();
    for (const json& row : doc.at("neighbors")) {
        std::vector<int> nbrs = row.get<std::vector<int>>();
        for (int& nb : nbrs) --nb;
        nk.neighbors.push_back(std::move(nbrs));
    }
    for (const json& row : doc.at("tables"))
        nk.tables.push_back(row.get<std::vector<double>>());
    validate_nk(nk);
    return nk;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace nmland
