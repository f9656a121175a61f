#include <algorithm>
#include <cmath>

#include "../text_io.hpp"
#include "firstlook/error.hpp"
#include "firstlook/kd_index.hpp"
#include "firstlook/metrics.hpp"

namespace firstlook {

CloudComparison cloud_to_cloud(const PointCloud& measured, const PointCloud& reference) {
    if (measured.empty() || reference.empty()) {
        throw Error(ErrorCode::EmptyCloud, "cloud_to_cloud needs two non-empty clouds");
    }
    const KdIndex index(reference);

    CloudComparison out;
    out.count = measured.size();
    auto& hist = out.histogram;
    const auto bins = static_cast<std::size_t>(std::llround(hist.max_distance / hist.bin_width));
    hist.counts.assign(bins, 0);

    std::vector<double> distances;
    distances.reserve(measured.size());
    double sum = 0.0;
    for (const auto& p : measured.points) {
        const double d = index.nearest(p).distance;
        distances.push_back(d);
        sum += d;
        out.max = std::max(out.max, d);
        const auto bin = static_cast<std::size_t>(d / hist.bin_width);
        if (d >= hist.max_distance || bin >= bins) {
            ++hist.overflow;
        } else {
            ++hist.counts[bin];
        }
    }
    out.mean = sum / static_cast<double>(distances.size());

    // Percentile by nearest rank; the trimmed mean drops the top 2%.
    std::sort(distances.begin(), distances.end());
    const auto keep = static_cast<std::size_t>(
        std::ceil(0.98 * static_cast<double>(distances.size())));
    out.p98 = distances[std::max<std::size_t>(keep, 1) - 1];
    double trimmed = 0.0;
    for (std::size_t i = 0; i < keep; ++i) {
        trimmed += distances[i];
    }
    out.trimmed_mean_98 = trimmed / static_cast<double>(std::max<std::size_t>(keep, 1));
    return out;
}

void write_histogram_csv(const DistanceHistogram& histogram, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        out << detail::format_double(static_cast<double>(i) * histogram.bin_width) << ','
            << detail::format_double(static_cast<double>(i + 1) * histogram.bin_width) << ','
            << histogram.counts[i] << "\n";
    }
    out << detail::format_double(histogram.max_distance) << ",inf," << histogram.overflow << "\n";
    if (!out) {
        throw Error(ErrorCode::IoError, "write failure on " + path.string());
    }
}

}  // namespace firstlook
