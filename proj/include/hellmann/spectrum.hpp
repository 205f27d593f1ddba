#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hellmann/errors.hpp"
#include "hellmann/model.hpp"
#include "hellmann/numerov.hpp"

namespace hellmann {

/// One cell of a spectrum table: an energy (absent when the producing solver
/// failed) plus a short note carrying the failure or provenance.
struct SpectrumCell {
    std::optional<double> energy;
    std::optional<double> est_error;
    std::string note;
};

struct SpectrumColumn {
    std::string id;
    Method method;
    std::string provenance;
};

/// Rows keyed by state label, one column per method or reference source; all
/// rows share the same (b, lambda).
struct SpectrumTable {
    double b = 0.0;
    double lambda = 0.0;
    std::vector<StateLabel> rows;
    std::vector<SpectrumColumn> columns;
    std::vector<std::vector<SpectrumCell>> cells; ///< [row][column]

    int add_column(SpectrumColumn col)
    {
        columns.push_back(std::move(col));
        for (auto& row : cells) {
            row.resize(columns.size());
        }
        return static_cast<int>(columns.size()) - 1;
    }

    int add_row(StateLabel label)
    {
        rows.push_back(label);
        cells.emplace_back(columns.size());
        return static_cast<int>(rows.size()) - 1;
    }

    int column_index(const std::string& id) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i].id == id) {
                return static_cast<int>(i);
            }
        }
        fail(errc::invalid_parameters, "no column '" + id + "' in the spectrum table");
    }

    int row_index(StateLabel label) const
    {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] == label) {
                return static_cast<int>(i);
            }
        }
        fail(errc::invalid_parameters, "no row " + state_name(label) + " in the spectrum table");
    }

    SpectrumCell& cell(StateLabel label, const std::string& column_id)
    {
        return cells[row_index(label)][column_index(column_id)];
    }

    const SpectrumCell& cell(StateLabel label, const std::string& column_id) const
    {
        return cells[row_index(label)][column_index(column_id)];
    }
};

namespace numerov {

/// Batch driver over solve_state for one l channel: all bound states with
/// nu <= nu_max, ordered by energy.  Per-state failures are recorded in the
/// cell note instead of aborting the scan; for the modified model the scan
/// stops at the census boundary.
inline SpectrumTable scan_spectrum(ScaledParams p, ModelKind kind, int l, int nu_max)
{
    if (l < 0 || nu_max < l + 1) {
        fail(errc::invalid_parameters, "need l >= 0 and nu_max >= l+1");
    }
    SpectrumTable table;
    table.b = p.b;
    table.lambda = p.lambda;
    const std::string column_id =
        std::string("numerov-") + (kind == ModelKind::TrueHellmann ? "hellmann" : "modified");
    table.add_column({column_id, Method::Numerov, "Numerov shooting with Richardson extrapolation"});

    for (int nu = l + 1; nu <= nu_max; ++nu) {
        const StateLabel label{nu, l};
        const int row = table.add_row(label);
        try {
            const EigenResult res = solve_state(p, kind, label);
            table.cells[row][0].energy = res.energy;
            table.cells[row][0].est_error = res.est_error;
        } catch (const error& e) {
            table.cells[row][0].note = e.what();
            if (kind == ModelKind::Modified && e.code() == errc::no_bound_state) {
                break; // census boundary reached, higher nu cannot bind either
            }
        }
    }
    // Rows were appended in increasing nu at fixed l, which is already
    // ascending energy order for a single channel.
    return table;
}

} // namespace numerov
} // namespace hellmann
