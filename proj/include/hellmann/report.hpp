#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>

#include <json.hpp>

#include "hellmann/analysis.hpp"
#include "hellmann/analytic.hpp"
#include "hellmann/model.hpp"
#include "hellmann/numerov.hpp"
#include "hellmann/rpm.hpp"
#include "hellmann/spectrum.hpp"
#include "hellmann/version.hpp"

namespace hellmann::report {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON pieces
// ---------------------------------------------------------------------------

inline json eigen_json(const EigenResult& r)
{
    return json{{"state", state_name(r.label)},
                {"nu", r.label.nu},
                {"l", r.label.l},
                {"energy", r.energy},
                {"est_error", r.est_error},
                {"method", method_name(r.method)},
                {"nodes", r.nodes},
                {"diagnostics",
                 json{{"iterations", r.diag.iterations},
                      {"final_mismatch", r.diag.final_mismatch},
                      {"grid", json{{"r_max", r.diag.grid.r_max}, {"n_points", r.diag.grid.n_points}}}}}};
}

inline json finding_json(const analytic::AuditFinding& f)
{
    json evidence = json::object();
    for (const auto& [k, v] : f.evidence) {
        evidence[k] = v;
    }
    return json{{"subject", analytic::audit_subject_name(f.subject)},
                {"verdict", analytic::audit_verdict_name(f.verdict)},
                {"detail", f.detail},
                {"evidence", evidence}};
}

inline json spectrum_json(const SpectrumTable& t)
{
    json columns = json::array();
    for (const auto& c : t.columns) {
        columns.push_back(json{{"id", c.id},
                               {"method", method_name(c.method)},
                               {"provenance", c.provenance}});
    }
    json rows = json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        json row{{"state", state_name(t.rows[i])}, {"nu", t.rows[i].nu}, {"l", t.rows[i].l}};
        json cells = json::object();
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            const SpectrumCell& cell = t.cells[i][j];
            json c = json::object();
            if (cell.energy) {
                c["energy"] = *cell.energy;
            }
            if (cell.est_error) {
                c["est_error"] = *cell.est_error;
            }
            if (!cell.note.empty()) {
                c["note"] = cell.note;
            }
            cells[t.columns[j].id] = std::move(c);
        }
        row["cells"] = std::move(cells);
        rows.push_back(std::move(row));
    }
    return json{{"b", t.b}, {"lambda", t.lambda}, {"columns", columns}, {"rows", rows}};
}

inline json ordering_json(const analysis::OrderingReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        json energies = json::array();
        for (const auto& [l, e] : row.energies) {
            energies.push_back(json{{"l", l}, {"energy", e}});
        }
        rows.push_back(json{{"nu", row.nu},
                            {"energies", energies},
                            {"verdict", analysis::ordering_verdict_name(row.verdict)}});
    }
    return json{{"column", r.column}, {"rows", rows}};
}

inline json census_json(const analytic::Census& c)
{
    json states = json::array();
    for (const auto& s : c.states) {
        states.push_back(json{{"state", state_name(s.label)},
                              {"nu", s.label.nu},
                              {"l", s.label.l},
                              {"energy", s.energy},
                              {"alpha", s.alpha}});
    }
    return json{{"infinite", c.infinite}, {"count", c.count()}, {"states", states}};
}

inline json bounds_json(const analytic::BoundsInterval& b)
{
    return json{{"lower", b.lower},
                {"upper", b.upper},
                {"nu", b.nu},
                {"b_sign_case", b.b_sign_case == analytic::BSignCase::Positive ? "positive" : "negative"}};
}

inline json table1_json(const analysis::Table1Report& r)
{
    json findings = json::array();
    for (const auto& f : r.findings) {
        findings.push_back(finding_json(f));
    }
    json provenance = json::array();
    for (const auto& p : r.provenance) {
        provenance.push_back(p);
    }
    return json{{"table", spectrum_json(r.table)},
                {"findings", findings},
                {"ordering", json{{"accurate", ordering_json(r.ordering_accurate)},
                                  {"modified", ordering_json(r.ordering_modified)}}},
                {"max_numerov_diff", r.max_numerov_diff},
                {"max_rpm_diff", r.max_rpm_diff},
                {"max_closed_form_diff", r.max_closed_form_diff},
                {"golden_pass", r.golden_pass},
                {"provenance", provenance}};
}

inline json hf_json(const analysis::HfAuditResult& r)
{
    return json{{"state", state_name(r.label)},
                {"b", r.b},
                {"lambda", r.lambda},
                {"delta_lambda", r.delta_lambda},
                {"dE_dlambda", r.dE_dlambda},
                {"expectation_exp_lambda_r", r.expectation},
                {"residual", r.residual},
                {"sign_ok", r.sign_ok},
                {"bounds", bounds_json(r.bounds)},
                {"inside_bounds", r.inside_bounds}};
}

inline json sweep_json(const analysis::SweepReport& r)
{
    json labels = json::array();
    for (const auto& l : r.labels) {
        labels.push_back(state_name(l));
    }
    json points = json::array();
    for (const auto& pt : r.points) {
        json cells = json::array();
        for (const auto& c : pt.cells) {
            json cj{{"state", state_name(c.label)}};
            if (c.e_true) cj["e_true"] = *c.e_true;
            if (c.e_modified) cj["e_modified"] = *c.e_modified;
            if (c.delta) cj["delta"] = *c.delta;
            if (!c.note.empty()) cj["note"] = c.note;
            cells.push_back(std::move(cj));
        }
        points.push_back(json{{"lambda", pt.lambda},
                              {"census_count", pt.census_count},
                              {"census_infinite", pt.census_infinite},
                              {"cells", cells}});
    }
    return json{{"b", r.b},
                {"labels", labels},
                {"points", points},
                {"abs_delta_increasing", r.delta_increasing},
                {"census_non_increasing", r.census_non_increasing}};
}

inline json rpm_history_json(const rpm::RpmResult& r)
{
    json rows = json::array();
    for (const auto& pt : r.history) {
        rows.push_back(json{{"D", pt.D}, {"root", pt.root}, {"abs_delta", pt.delta}});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Document envelope
// ---------------------------------------------------------------------------

inline std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Every emitted document carries its schema id, the artifact and dataset
/// versions, and the full effective configuration; identical configurations
/// produce byte-identical JSON once the timestamp is suppressed.
inline json make_document(const std::string& schema, const json& config, const json& payload,
                          bool with_timestamp)
{
    json doc;
    doc["schema"] = schema;
    doc["artifact_version"] = artifact_version;
    doc["reference_dataset_version"] = reference_dataset_version;
    doc["config"] = config;
    if (with_timestamp) {
        doc["timestamp"] = utc_timestamp();
    }
    for (const auto& [k, v] : payload.items()) {
        doc[k] = v;
    }
    return doc;
}

// ---------------------------------------------------------------------------
// CSV / Markdown projections (JSON stays the source of truth)
// ---------------------------------------------------------------------------

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

/// Generic flat projection: one "path,value" row per leaf.
inline std::string to_csv(const json& doc)
{
    std::string out = "key,value\n";
    const json flat = doc.flatten();
    for (const auto& [k, v] : flat.items()) {
        out += csv_escape(k);
        out += ',';
        out += csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
        out += '\n';
    }
    return out;
}

inline std::string spectrum_csv(const SpectrumTable& t)
{
    std::string out = "state,nu,l";
    for (const auto& c : t.columns) {
        out += "," + csv_escape(c.id);
    }
    out += '\n';
    char buf[64];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        out += state_name(t.rows[i]) + "," + std::to_string(t.rows[i].nu) + "," +
               std::to_string(t.rows[i].l);
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            out += ',';
            if (t.cells[i][j].energy) {
                std::snprintf(buf, sizeof(buf), "%.12g", *t.cells[i][j].energy);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string spectrum_markdown(const SpectrumTable& t)
{
    std::string out = "| State |";
    for (const auto& c : t.columns) {
        out += " " + c.id + " |";
    }
    out += "\n|---|";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        out += "---|";
    }
    out += '\n';
    char buf[64];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        out += "| " + state_name(t.rows[i]) + " |";
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            if (t.cells[i][j].energy) {
                std::snprintf(buf, sizeof(buf), "%.11g", *t.cells[i][j].energy);
                out += std::string(" ") + buf + " |";
            } else {
                out += " - |";
            }
        }
        out += '\n';
    }
    return out;
}

/// Markdown projection of an arbitrary document: definition list of scalars
/// plus pretty-printed JSON for the structured parts.
inline std::string to_markdown(const json& doc, const std::string& title)
{
    std::string out = "# " + title + "\n\n";
    json structured = json::object();
    for (const auto& [k, v] : doc.items()) {
        if (v.is_primitive()) {
            out += "- **" + k + "**: " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
        } else {
            structured[k] = v;
        }
    }
    if (!structured.empty()) {
        out += "\n```json\n" + structured.dump(2) + "\n```\n";
    }
    return out;
}

} // namespace hellmann::report
