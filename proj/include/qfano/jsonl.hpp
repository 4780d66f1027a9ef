#pragma once

// JSONL encoding of candidate records: one object per line with fields
// q, basket ([[r, b, multiplicity] ...]), A3, KC2, genus, h0, flags.
// Rationals are strings in lowest terms; output key order is fixed so runs
// are byte-identical.

#include "qfano/search.hpp"

#include <json.hpp>

#include <string>

namespace qfano {

inline nlohmann::ordered_json record_to_json(const CandidateRecord& rec) {
    nlohmann::ordered_json j;
    j["q"] = rec.q;
    auto basket = nlohmann::ordered_json::array();
    for (const auto& [type, mult] : rec.basket.entries())
        basket.push_back({type.r(), type.b(), mult});
    j["basket"] = std::move(basket);
    j["A3"] = to_string(rec.A3);
    j["KC2"] = to_string(rec.Kc2);
    j["genus"] = static_cast<long long>(rec.genus);
    auto h0 = nlohmann::ordered_json::array();
    for (const Int& v : rec.h0) h0.push_back(v.str());
    j["h0"] = std::move(h0);
    j["flags"] = rec.flags;
    return j;
}

inline std::string record_to_jsonl(const CandidateRecord& rec) { return record_to_json(rec).dump(); }

inline CandidateRecord record_from_json(const nlohmann::json& j) {
    CandidateRecord rec;
    rec.q = j.at("q").get<int>();
    std::vector<Basket::Entry> entries;
    for (const auto& e : j.at("basket"))
        entries.emplace_back(SingularityType::make(e.at(0).get<int>(), e.at(1).get<int>()),
                             e.at(2).get<int>());
    rec.basket = Basket(std::move(entries));
    rec.A3 = parse_rational(j.at("A3").get<std::string>());
    rec.Kc2 = parse_rational(j.at("KC2").get<std::string>());
    rec.genus = Int(j.at("genus").get<long long>());
    for (const auto& v : j.at("h0")) rec.h0.push_back(Int(v.get<std::string>()));
    rec.flags = j.at("flags").get<std::vector<std::string>>();
    return rec;
}

inline CandidateRecord record_from_jsonl(const std::string& line) {
    return record_from_json(nlohmann::json::parse(line));
}

} // namespace qfano
