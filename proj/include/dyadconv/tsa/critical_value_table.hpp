#pragma once

// Generated by tools/gen_critical_values: 100000 Gaussian random walks per (form, n), lag order 3, seed 20160101.
// Do not edit by hand.

#include <array>
#include <cstddef>

#include "dyadconv/tsa/adf.hpp"

namespace dyadconv::tsa {

struct EmbeddedCriticalValue {
    AdfForm form;
    std::size_t n;
    double level;
    double value;
};

inline constexpr std::array<EmbeddedCriticalValue, 54> kEmbeddedCriticalValues{{
    {AdfForm::none, 25, 0.01, -2.601642017760893},
    {AdfForm::none, 25, 0.05, -1.8848018995272189},
    {AdfForm::none, 25, 0.10, -1.544223777383894},
    {AdfForm::none, 50, 0.01, -2.555344748332095},
    {AdfForm::none, 50, 0.05, -1.923916568476147},
    {AdfForm::none, 50, 0.10, -1.5949202688548603},
    {AdfForm::none, 100, 0.01, -2.575518334171933},
    {AdfForm::none, 100, 0.05, -1.940613628247892},
    {AdfForm::none, 100, 0.10, -1.6005083681324452},
    {AdfForm::none, 250, 0.01, -2.5600244486362533},
    {AdfForm::none, 250, 0.05, -1.919126170789361},
    {AdfForm::none, 250, 0.10, -1.593327449581068},
    {AdfForm::none, 500, 0.01, -2.5579440163145652},
    {AdfForm::none, 500, 0.05, -1.935194257266976},
    {AdfForm::none, 500, 0.10, -1.607815826241178},
    {AdfForm::none, 1000, 0.01, -2.5674913418505034},
    {AdfForm::none, 1000, 0.05, -1.9351227950259444},
    {AdfForm::none, 1000, 0.10, -1.614496180790368},
    {AdfForm::drift, 25, 0.01, -3.7218732093747557},
    {AdfForm::drift, 25, 0.05, -2.9545368559698084},
    {AdfForm::drift, 25, 0.10, -2.590305682221895},
    {AdfForm::drift, 50, 0.01, -3.5211157196923946},
    {AdfForm::drift, 50, 0.05, -2.8954875129138427},
    {AdfForm::drift, 50, 0.10, -2.570585120198074},
    {AdfForm::drift, 100, 0.01, -3.4877731595393886},
    {AdfForm::drift, 100, 0.05, -2.8785886879971203},
    {AdfForm::drift, 100, 0.10, -2.56766042408727},
    {AdfForm::drift, 250, 0.01, -3.4552972413351286},
    {AdfForm::drift, 250, 0.05, -2.860424306477804},
    {AdfForm::drift, 250, 0.10, -2.560710248233575},
    {AdfForm::drift, 500, 0.01, -3.436250514715461},
    {AdfForm::drift, 500, 0.05, -2.8641724815078753},
    {AdfForm::drift, 500, 0.10, -2.568038181255605},
    {AdfForm::drift, 1000, 0.01, -3.450792809500873},
    {AdfForm::drift, 1000, 0.05, -2.8619048320824865},
    {AdfForm::drift, 1000, 0.10, -2.563496993295078},
    {AdfForm::drift_trend, 25, 0.01, -4.339683934254797},
    {AdfForm::drift_trend, 25, 0.05, -3.538263333638563},
    {AdfForm::drift_trend, 25, 0.10, -3.166998422758132},
    {AdfForm::drift_trend, 50, 0.01, -4.118230741026983},
    {AdfForm::drift_trend, 50, 0.05, -3.4576805967716004},
    {AdfForm::drift_trend, 50, 0.10, -3.1373295942128108},
    {AdfForm::drift_trend, 100, 0.01, -4.023987636321025},
    {AdfForm::drift_trend, 100, 0.05, -3.43907819542512},
    {AdfForm::drift_trend, 100, 0.10, -3.13686560162271},
    {AdfForm::drift_trend, 250, 0.01, -3.98567737863286},
    {AdfForm::drift_trend, 250, 0.05, -3.424819355851349},
    {AdfForm::drift_trend, 250, 0.10, -3.131964634097049},
    {AdfForm::drift_trend, 500, 0.01, -3.9660149949350916},
    {AdfForm::drift_trend, 500, 0.05, -3.418157291575816},
    {AdfForm::drift_trend, 500, 0.10, -3.1347202556591633},
    {AdfForm::drift_trend, 1000, 0.01, -3.965061251813061},
    {AdfForm::drift_trend, 1000, 0.05, -3.405896653743003},
    {AdfForm::drift_trend, 1000, 0.10, -3.128367647569702},
}};

}  // namespace dyadconv::tsa
