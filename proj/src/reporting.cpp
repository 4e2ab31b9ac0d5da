#include "polibench/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace polibench {

long round_half_up(double value) {
    return static_cast<long>(std::floor(value + 0.5));
}

std::string percent_one_decimal(double fraction) {
    const double tenths = std::floor(fraction * 1000.0 + 0.5);
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << tenths / 10.0;
    return out.str();
}

namespace {

std::string full_precision(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

// Cells for both renderings of one table.
struct Cell {
    std::string shown;
    std::string machine;
};

struct Grid {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
};

std::string escape_markdown(std::string_view text) {
    std::string out;
    for (const char c : text) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string escape_tsv(std::string_view text) {
    std::string out(text);
    std::replace(out.begin(), out.end(), '\t', ' ');
    std::replace(out.begin(), out.end(), '\n', ' ');
    return out;
}

RenderedTable render(const Grid& grid) {
    RenderedTable table;
    std::ostringstream md;
    std::ostringstream tsv;
    md << '|';
    for (const auto& h : grid.header) md << ' ' << escape_markdown(h) << " |";
    md << "\n|";
    for (std::size_t c = 0; c < grid.header.size(); ++c) md << (c == 0 ? " --- |" : " ---: |");
    md << '\n';
    for (std::size_t c = 0; c < grid.header.size(); ++c) tsv << (c ? "\t" : "") << escape_tsv(grid.header[c]);
    tsv << '\n';
    for (const auto& row : grid.rows) {
        md << '|';
        for (const Cell& cell : row) md << ' ' << escape_markdown(cell.shown) << " |";
        md << '\n';
        for (std::size_t c = 0; c < row.size(); ++c) tsv << (c ? "\t" : "") << escape_tsv(row[c].machine);
        tsv << '\n';
    }
    for (const auto& note : grid.notes) md << '\n' << note << '\n';
    table.markdown = md.str();
    table.tsv = tsv.str();
    return table;
}

Cell text_cell(const std::string& text) { return Cell{text, text}; }

Cell percent_cell(const std::optional<double>& fraction) {
    if (!fraction) return Cell{"", ""};
    return Cell{percent_one_decimal(*fraction), full_precision(*fraction * 100.0)};
}

}  // namespace

RenderedTable render_intersection_table(const IntersectionMatrix& matrix, double threshold_pct) {
    Grid grid;
    grid.header.push_back("");
    for (const auto& name : matrix.names) grid.header.push_back(name);
    std::vector<std::string> flagged;
    for (const auto& row : matrix.names) {
        std::vector<Cell> cells{text_cell(row)};
        for (const auto& column : matrix.names) {
            if (row == column) {
                cells.push_back(Cell{"--", ""});
                continue;
            }
            const IntersectionReport* report = matrix.find(row, column);
            if (report == nullptr) {
                cells.push_back(Cell{"", ""});
                continue;
            }
            const long rounded = round_half_up(report->pct_of_a);
            cells.push_back(Cell{rounded == 0 ? "_0_" : std::to_string(rounded), full_precision(report->pct_of_a)});
            if (report->pct_of_a >= threshold_pct) {
                flagged.push_back(row + " -> " + column + " (" + std::to_string(report->match_count) + " rows)");
            }
        }
        grid.rows.push_back(std::move(cells));
    }
    grid.notes.push_back("Cells: percentage of the row dataset's examples matched in the column dataset.");
    if (!flagged.empty()) {
        std::string note = "At or above " + full_precision(threshold_pct) + " %: ";
        for (std::size_t i = 0; i < flagged.size(); ++i) note += (i ? "; " : "") + flagged[i];
        grid.notes.push_back(note);
    }
    return render(grid);
}

std::optional<BenchmarkLayout> parse_layout(std::string_view text) {
    if (text == "loi") return BenchmarkLayout::LeaveOneIn;
    if (text == "loo") return BenchmarkLayout::LeaveOneOut;
    if (text == "existing") return BenchmarkLayout::Existing;
    return std::nullopt;
}

RenderedTable render_benchmark_table(std::span<const BenchmarkEntry> entries, BenchmarkLayout layout) {
    std::vector<std::string> models;
    for (const auto& e : entries) {
        if (std::find(models.begin(), models.end(), e.model) == models.end()) models.push_back(e.model);
    }

    // column definitions: (model, heading, value extractor)
    struct Column {
        std::string model;
        std::string heading;
        int group;  // 0 = in-distribution average, 1 = out-of-distribution, 2 = per-dataset
    };
    std::vector<Column> columns;
    std::vector<std::string> row_names;
    if (layout == BenchmarkLayout::Existing) {
        for (const auto& m : models) columns.push_back({m, m, 2});
        std::set<std::string> seen;
        for (const auto& e : entries) {
            for (const auto& [name, score] : e.report.per_dataset) {
                if (seen.insert(name).second) row_names.push_back(name);
            }
        }
        std::sort(row_names.begin(), row_names.end());
    } else {
        const bool loi = layout == BenchmarkLayout::LeaveOneIn;
        for (const auto& m : models) {
            columns.push_back({m, m + (loi ? " left-in" : " trained"), 0});
            columns.push_back({m, m + (loi ? " unseen" : " left-out"), 1});
        }
        for (const auto& e : entries) {
            if (std::find(row_names.begin(), row_names.end(), e.row) == row_names.end()) row_names.push_back(e.row);
        }
    }

    const auto value = [&](const Column& col, const std::string& row) -> std::optional<double> {
        for (const auto& e : entries) {
            if (e.model != col.model) continue;
            if (col.group == 2) {
                const auto it = e.report.per_dataset.find(row);
                if (it != e.report.per_dataset.end()) return it->second.metrics.f1;
                continue;
            }
            if (e.row != row) continue;
            const auto& group = col.group == 0 ? e.report.in_distribution : e.report.out_of_distribution;
            if (group) return group->f1;
        }
        return std::nullopt;
    };

    std::vector<std::vector<std::optional<double>>> values(row_names.size());
    std::vector<bool> keep(columns.size(), false);
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            values[r].push_back(value(columns[c], row_names[r]));
            keep[c] = keep[c] || values[r].back().has_value();
        }
    }

    Grid grid;
    grid.header.push_back("Dataset");
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (keep[c]) grid.header.push_back(columns[c].heading);
    }
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        std::vector<Cell> cells{text_cell(row_names[r])};
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (keep[c]) cells.push_back(percent_cell(values[r][c]));
        }
        grid.rows.push_back(std::move(cells));
    }
    std::vector<Cell> average{text_cell("Average")};
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (!keep[c]) continue;
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t r = 0; r < row_names.size(); ++r) {
            if (values[r][c]) {
                sum += *values[r][c];
                ++n;
            }
        }
        average.push_back(percent_cell(n == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(n))));
    }
    grid.rows.push_back(std::move(average));

    std::string omitted;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (!keep[c]) omitted += (omitted.empty() ? "" : ", ") + columns[c].heading;
    }
    if (!omitted.empty()) grid.notes.push_back("(omitted, no data: " + omitted + ")");
    grid.notes.push_back("Macro F1 in percent.");
    return render(grid);
}

RenderedTable render_evaluation_table(const EvaluationReport& report) {
    Grid grid;
    grid.header = {"Dataset", "n", "Accuracy", "Precision", "Recall", "F1"};
    bool any_single = false;
    const auto metric_cells = [](std::vector<Cell>& cells, const Metrics& m) {
        cells.push_back(percent_cell(m.accuracy));
        cells.push_back(percent_cell(m.precision));
        cells.push_back(percent_cell(m.recall));
        cells.push_back(percent_cell(m.f1));
    };
    for (const auto& [name, score] : report.per_dataset) {
        any_single = any_single || score.single_class;
        std::vector<Cell> cells{Cell{score.single_class ? name + " *" : name, name},
                                text_cell(std::to_string(score.scored))};
        metric_cells(cells, score.metrics);
        grid.rows.push_back(std::move(cells));
    }
    const std::pair<const char*, const std::optional<Metrics>*> groups[] = {
        {"In-distribution average", &report.in_distribution},
        {"Out-of-distribution average", &report.out_of_distribution},
        {"Overall average", &report.overall},
    };
    for (const auto& [label, metrics] : groups) {
        if (!*metrics) continue;
        std::vector<Cell> cells{text_cell(label), text_cell("")};
        metric_cells(cells, **metrics);
        grid.rows.push_back(std::move(cells));
    }
    if (any_single) grid.notes.push_back("* single-class gold labels: macro scores are not meaningful.");
    if (!report.model_supports_center) grid.notes.push_back("Scored on left and right examples only.");
    return render(grid);
}

SplitSummary summarize(const SplitPlan& plan) {
    SplitSummary s;
    s.config_name = plan.config_name;
    s.mode = plan.mode;
    s.train = plan.train.size();
    s.validation = plan.validation.size();
    for (const auto& [name, ids] : plan.test) s.test += ids.size();
    s.center_multiplier = plan.center_multiplier;
    s.multiplier_capped = plan.multiplier_capped;
    s.excluded = plan.excluded_datasets;
    return s;
}

std::vector<std::string> undefined_datasets(const ReportBundle& bundle, std::span<const std::string> known) {
    std::set<std::string> names;
    if (bundle.intersection_matrix) {
        names.insert(bundle.intersection_matrix->names.begin(), bundle.intersection_matrix->names.end());
    }
    for (const auto& e : bundle.eval_reports) {
        for (const auto& [name, score] : e.report.per_dataset) names.insert(name);
    }
    for (const auto& s : bundle.split_summaries) {
        for (const auto& ex : s.excluded) names.insert(ex.dataset);
    }
    std::vector<std::string> unknown;
    for (const auto& n : names) {
        if (std::find(known.begin(), known.end(), n) == known.end()) unknown.push_back(n);
    }
    return unknown;
}

std::string render_bundle(const ReportBundle& bundle, BenchmarkLayout layout) {
    std::ostringstream out;
    if (bundle.intersection_matrix) {
        out << "## Dataset intersections\n\n" << render_intersection_table(*bundle.intersection_matrix).markdown << '\n';
    }
    if (!bundle.split_summaries.empty()) {
        Grid grid;
        grid.header = {"Config", "Mode", "Train", "Validation", "Test", "Center multiplier", "Excluded"};
        for (const auto& s : bundle.split_summaries) {
            std::string multiplier;
            if (s.center_multiplier) {
                std::ostringstream m;
                m << std::fixed << std::setprecision(3) << *s.center_multiplier << (s.multiplier_capped ? " (capped)" : "");
                multiplier = m.str();
            }
            std::string excluded;
            for (const auto& ex : s.excluded) excluded += (excluded.empty() ? "" : ", ") + ex.dataset;
            grid.rows.push_back({text_cell(s.config_name), text_cell(std::string(split_mode_name(s.mode))),
                                 text_cell(std::to_string(s.train)), text_cell(std::to_string(s.validation)),
                                 text_cell(std::to_string(s.test)), text_cell(multiplier), text_cell(excluded)});
        }
        out << "## Splits\n\n" << render(grid).markdown << '\n';
    }
    if (!bundle.eval_reports.empty()) {
        out << "## Benchmark\n\n" << render_benchmark_table(bundle.eval_reports, layout).markdown << '\n';
    }
    return out.str();
}

}  // namespace polibench
