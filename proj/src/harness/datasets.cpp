#include "fgm/harness/datasets.hpp"

namespace fgm::harness {

const Dataset& wuhan()
{
    static const Dataset d{
        "wuhan",
        Series({2011, 2012, 2013, 2014, 2015},
               (Eigen::VectorXd(5) << 714700, 765000, 860412, 1005200, 1061400).finished()),
        "Peng, Y. and Yang, J., Forecasting of Wuhan Port Container Throughput Based on "
        "Combination Forecasting Model, Logistics Technology 35(03), 2016"};
    return d;
}

const Dataset& zhejiang()
{
    static const Dataset d{
        "zhejiang",
        Series({2007, 2008, 2009, 2010, 2011, 2012, 2013},
               (Eigen::VectorXd(7) << 3210300, 3272300, 3152300, 3279100, 3411200, 3474600, 3606700)
                   .finished()),
        "Peng, D. et al., Prediction and Analysis for Marine Capture Yield and the Number of "
        "Marine Fishery Vessels Dynamic in Zhejiang Province by Using Grey System Theory, "
        "Journal of Anhui Agri 43(18), 2015"};
    return d;
}

const Dataset& dataset_by_name(std::string_view name)
{
    if (name == "wuhan") return wuhan();
    if (name == "zhejiang") return zhejiang();
    throw PreconditionError("unknown dataset '" + std::string(name) + "' (expected wuhan or zhejiang)");
}

std::vector<std::string> dataset_names()
{
    return {"wuhan", "zhejiang"};
}

} // namespace fgm::harness
