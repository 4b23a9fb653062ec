#include "avdiag/pipeline/svg.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

#include "avdiag/errors.hpp"

namespace avdiag::pipeline {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Svg {
    std::string body;
    double width, height;

    Svg(double w, double h) : width(w), height(h) {}

    void rect(double x, double y, double w, double h, const std::string& fill) {
        body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                "\" height=\"" + num(h) + "\" fill=\"" + fill + "\" stroke=\"#ffffff\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 11,
              const std::string& anchor = "start") {
        body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
                std::to_string(size) + "\" font-family=\"monospace\" text-anchor=\"" +
                anchor + "\">" + s + "</text>\n";
    }
    void circle(double x, double y, double r, const std::string& fill) {
        body += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) +
                "\" fill=\"" + fill + "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke) {
        body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke) {
        body += "<polyline fill=\"none\" stroke=\"" + stroke + "\" points=\"";
        for (const auto& [x, y] : pts) body += num(x) + "," + num(y) + " ";
        body += "\"/>\n";
    }

    std::string finish() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
               "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
               num(height) + "\">\n" + body + "</svg>\n";
    }
};

// white -> red ramp for failure intensity
std::string heat_color(double v) {
    const int g = static_cast<int>(255 - v * 195);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#ff%02x%02x", g, g);
    return buf;
}

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#222222"};

const std::pair<const char*, std::optional<double> metrics::FailureRates::*> kFailureCols[] = {
    {"mute_halluc", &metrics::FailureRates::mute_hallucination},
    {"swap_false_match", &metrics::FailureRates::swap_false_match},
    {"false_silence", &metrics::FailureRates::false_silence},
    {"swap_false_mism", &metrics::FailureRates::swap_false_mismatch},
    {"audio_dodge", &metrics::FailureRates::audio_dodge},
    {"offset_blind", &metrics::FailureRates::offset_blindness},
    {"direction_conf", &metrics::FailureRates::direction_confusion},
    {"false_sync_alarm", &metrics::FailureRates::false_sync_alarm},
};

}  // namespace

std::string render_failure_heatmap(
    const std::map<std::string, metrics::MetricsReport>& by_model) {
    const double cell_w = 86, cell_h = 30, left = 160, top = 60;
    Svg svg(left + 8 * cell_w + 20, top + by_model.size() * cell_h + 20);
    svg.text(10, 24, "failure-mode heatmap", 14);

    int col = 0;
    for (const auto& [name, member] : kFailureCols) {
        (void)member;
        svg.text(left + col * cell_w + cell_w / 2, top - 8, name, 9, "middle");
        ++col;
    }
    int row = 0;
    for (const auto& [model, report] : by_model) {
        const double y = top + row * cell_h;
        svg.text(10, y + cell_h / 2 + 4, model, 11);
        col = 0;
        for (const auto& [name, member] : kFailureCols) {
            (void)name;
            const std::optional<double> v = report.failures.*member;
            const double x = left + col * cell_w;
            svg.rect(x, y, cell_w, cell_h, v ? heat_color(*v) : "#dddddd");
            svg.text(x + cell_w / 2, y + cell_h / 2 + 4, v ? num(*v) : "n/a", 10, "middle");
            ++col;
        }
        ++row;
    }
    return svg.finish();
}

std::string render_breakdown_bars(
    const std::map<std::string, metrics::MetricsReport>& by_model) {
    const char* tasks[] = {"shift", "mute", "swap"};
    static const std::vector<std::string> cats{"synced", "delay", "early", "muted",
                                               "mismatched"};
    const double bar_w = 46, bar_h = 120, gap = 14, group_gap = 40, top = 60;
    const double group_w = by_model.size() * (bar_w + gap) + group_gap;
    Svg svg(40 + 3 * group_w, top + bar_h + 80);
    svg.text(10, 24, "prediction breakdown (intervened subsets)", 14);

    double legend_x = 10;
    for (std::size_t c = 0; c < cats.size(); ++c) {
        svg.rect(legend_x, 34, 10, 10, kPalette[c]);
        svg.text(legend_x + 14, 43, cats[c], 10);
        legend_x += 110;
    }

    for (int t = 0; t < 3; ++t) {
        double x = 40 + t * group_w;
        svg.text(x, top + bar_h + 46, tasks[t], 12);
        for (const auto& [model, report] : by_model) {
            auto task_it = report.prediction_breakdown.find(tasks[t]);
            int total = 0;
            std::map<std::string, int> counts;
            if (task_it != report.prediction_breakdown.end()) {
                auto sub = task_it->second.find("interv");
                if (sub != task_it->second.end()) {
                    counts = sub->second;
                    for (const auto& [cat, n] : counts) total += n;
                }
            }
            double y = top + bar_h;
            for (std::size_t c = 0; c < cats.size(); ++c) {
                const auto it = counts.find(cats[c]);
                if (it == counts.end() || total == 0) continue;
                const double h = bar_h * it->second / total;
                y -= h;
                svg.rect(x, y, bar_w, h, kPalette[c]);
            }
            svg.text(x + bar_w / 2, top + bar_h + 14, model.substr(0, 8), 8, "middle");
            x += bar_w + gap;
        }
    }
    return svg.finish();
}

std::string render_band_lines(const std::map<std::string, metrics::MetricsReport>& by_model) {
    std::set<std::string> bands;
    for (const auto& [model, report] : by_model)
        for (const auto& [band, acc] : report.band_acc) bands.insert(band);

    const double left = 60, top = 50, plot_w = 420, plot_h = 180;
    Svg svg(left + plot_w + 160, top + plot_h + 60);
    svg.text(10, 24, "band accuracy (shift)", 14);
    svg.line(left, top, left, top + plot_h, "#000000");
    svg.line(left, top + plot_h, left + plot_w, top + plot_h, "#000000");
    svg.text(left - 8, top + 8, "1.0", 10, "end");
    svg.text(left - 8, top + plot_h, "0.0", 10, "end");

    const double step = bands.size() > 1 ? plot_w / (bands.size() - 1) : 0;
    int bi = 0;
    for (const auto& band : bands) {
        svg.text(left + bi * step, top + plot_h + 16, band, 10, "middle");
        ++bi;
    }

    int mi = 0;
    for (const auto& [model, report] : by_model) {
        const std::string color = kPalette[mi % 8];
        std::vector<std::pair<double, double>> pts;
        bi = 0;
        for (const auto& band : bands) {
            auto it = report.band_acc.find(band);
            if (it != report.band_acc.end())
                pts.emplace_back(left + bi * step, top + plot_h * (1.0 - it->second));
            ++bi;
        }
        if (pts.size() > 1) svg.polyline(pts, color);
        for (const auto& [x, y] : pts) svg.circle(x, y, 3, color);
        svg.rect(left + plot_w + 16, top + mi * 16, 10, 10, color);
        svg.text(left + plot_w + 30, top + mi * 16 + 9, model, 10);
        ++mi;
    }
    return svg.finish();
}

std::string render_tradeoff_scatter(
    const std::map<std::string, metrics::MetricsReport>& by_model) {
    const double left = 70, top = 50, plot = 220;
    Svg svg(left + plot + 220, top + plot + 60);
    svg.text(10, 24, "intervention-control tradeoff", 14);
    svg.line(left, top, left, top + plot, "#000000");
    svg.line(left, top + plot, left + plot, top + plot, "#000000");
    svg.text(left + plot / 2, top + plot + 30, "false alarm rate", 11, "middle");
    svg.text(left - 40, top + plot / 2, "detect", 11);
    svg.text(left - 8, top + 8, "1.0", 10, "end");
    svg.text(left - 8, top + plot, "0.0", 10, "end");
    svg.text(left + plot, top + plot + 16, "1.0", 10, "middle");

    int mi = 0;
    for (const auto& [model, report] : by_model) {
        const std::string color = kPalette[mi % 8];
        for (const auto& [task, t] : report.tradeoff) {
            const double x = left + plot * t.false_alarm_rate;
            const double y = top + plot * (1.0 - t.detection_rate);
            if (task == "mute")
                svg.circle(x, y, 5, color);
            else
                svg.rect(x - 4, y - 4, 8, 8, color);
        }
        svg.rect(left + plot + 16, top + mi * 16, 10, 10, color);
        svg.text(left + plot + 30, top + mi * 16 + 9, model, 10);
        ++mi;
    }
    svg.text(left + plot + 16, top + static_cast<double>(by_model.size()) * 16 + 20,
             "circle=mute square=swap", 9);
    return svg.finish();
}

void write_svg(const std::filesystem::path& path, const std::string& svg) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << svg;
}

}  // namespace avdiag::pipeline
