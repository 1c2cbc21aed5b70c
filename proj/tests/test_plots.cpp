#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "sarcbench/eval.hpp"
#include "sarcbench/plots.hpp"

using namespace sarcbench;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// The element (from "<text" to "</text>") whose body contains the marker.
std::string text_element_containing(const std::string& svg, const std::string& marker) {
    const std::size_t body = svg.find(marker);
    REQUIRE(body != std::string::npos);
    const std::size_t start = svg.rfind("<text", body);
    const std::size_t stop = svg.find("</text>", body);
    REQUIRE(start != std::string::npos);
    REQUIRE(stop != std::string::npos);
    return svg.substr(start, stop - start + 7);
}

void check_basic_wellformedness(const std::string& svg) {
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
    CHECK(count_occurrences(svg, "<svg") == 1);
    CHECK(count_occurrences(svg, "</svg>") == 1);
    CHECK(count_occurrences(svg, "<text") == count_occurrences(svg, "</text>"));
    // every non-text element is self-closing
    CHECK(count_occurrences(svg, "<rect") == count_occurrences(svg, "\"/>\n") -
                                                 count_occurrences(svg, "<line") -
                                                 count_occurrences(svg, "<polyline"));
    CHECK(count_occurrences(svg, "\"") % 2 == 0);
}

}  // namespace

TEST_CASE("confusion heatmap shows all four counts") {
    ConfusionMatrix2 cm;
    cm.tn = 15;
    cm.fp = 5;
    cm.fn = 2;
    cm.tp = 17;
    const std::string svg = render_confusion_svg(cm);

    check_basic_wellformedness(svg);
    CHECK(svg.find("width=\"430\" height=\"440\"") != std::string::npos);
    CHECK(svg.find("Confusion matrix") != std::string::npos);
    CHECK(svg.find("Predicted label") != std::string::npos);
    CHECK(svg.find("True label") != std::string::npos);
    CHECK(svg.find("rotate(-90") != std::string::npos);
    for (const std::string count : {">15<", ">5<", ">2<", ">17<"}) {
        CHECK(svg.find(count) != std::string::npos);
    }
    CHECK(count_occurrences(svg, "<rect x=") == 4);
}

TEST_CASE("cell text flips to white past half of the maximum count") {
    ConfusionMatrix2 cm;
    cm.tn = 15;
    cm.fp = 5;
    cm.fn = 2;
    cm.tp = 17;
    const std::string svg = render_confusion_svg(cm);
    // max is 17: 15 and 17 sit on dark fills, 5 and 2 on light ones
    CHECK(text_element_containing(svg, ">15<").find("fill=\"white\"") != std::string::npos);
    CHECK(text_element_containing(svg, ">17<").find("fill=\"white\"") != std::string::npos);
    CHECK(text_element_containing(svg, ">5<").find("fill=\"black\"") != std::string::npos);
    CHECK(text_element_containing(svg, ">2<").find("fill=\"black\"") != std::string::npos);
}

TEST_CASE("heatmap color ramp endpoints") {
    ConfusionMatrix2 diag;
    diag.tn = 1;
    diag.tp = 1;
    const std::string svg = render_confusion_svg(diag);
    CHECK(count_occurrences(svg, "rgb(8,48,107)") == 2);      // counts at the maximum
    CHECK(count_occurrences(svg, "rgb(247,251,255)") == 2);   // zero counts

    // an all-zero matrix renders, with every cell at the light end
    const std::string empty = render_confusion_svg(ConfusionMatrix2{});
    check_basic_wellformedness(empty);
    CHECK(count_occurrences(empty, "rgb(247,251,255)") == 4);
    CHECK(count_occurrences(empty, "fill=\"black\"") == 4);
}

TEST_CASE("roc rendering pins the plot geometry") {
    const std::vector<int> y{1, 0, 1, 0};
    const std::vector<double> s{0.8, 0.7, 0.6, 0.5};
    const RocCurve curve = roc(y, s);
    REQUIRE(curve.auc == doctest::Approx(0.75));

    const std::string svg = render_roc_svg(curve);
    check_basic_wellformedness(svg);
    CHECK(svg.find("width=\"480\" height=\"460\"") != std::string::npos);
    CHECK(svg.find("ROC curve") != std::string::npos);
    CHECK(svg.find("False positive rate") != std::string::npos);
    CHECK(svg.find("True positive rate") != std::string::npos);

    // (0,0) maps to the lower-left plot corner, (1,1) to the upper-right
    const std::string polyline =
        "points=\"80.00,376.00 80.00,216.00 260.00,216.00 260.00,56.00 440.00,56.00\"";
    CHECK(svg.find(polyline) != std::string::npos);

    CHECK(svg.find("AUC = 0.750") != std::string::npos);

    // chance diagonal: dashed, corner to corner
    const std::string diagonal = "<line x1=\"80.00\" y1=\"376.00\" x2=\"440.00\" y2=\"56.00\"";
    CHECK(svg.find(diagonal) != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"6,4\"") != std::string::npos);

    // tick labels on both axes
    for (const std::string tick : {">0.0<", ">0.5<", ">1.0<"}) {
        CHECK(count_occurrences(svg, tick) == 2);
    }
}

TEST_CASE("roc legend rounds to three decimals") {
    RocCurve curve;
    curve.points = {{0.0, 0.0}, {1.0, 1.0}};
    curve.auc = 0.5;
    CHECK(render_roc_svg(curve).find("AUC = 0.500") != std::string::npos);
    curve.auc = 0.59049;
    CHECK(render_roc_svg(curve).find("AUC = 0.590") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    ConfusionMatrix2 cm;
    cm.tn = 3;
    cm.fp = 1;
    cm.fn = 4;
    cm.tp = 1;
    CHECK(render_confusion_svg(cm) == render_confusion_svg(cm));

    RocCurve curve;
    curve.points = {{0.0, 0.0}, {0.25, 0.75}, {1.0, 1.0}};
    curve.auc = 0.75;
    CHECK(render_roc_svg(curve) == render_roc_svg(curve));
}
