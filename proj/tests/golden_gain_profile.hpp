// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Regression anchors: a fixed 64-antenna fading gain profile (sorted
// ascending) and the reference array gains, in dB, obtained when the rank-k
// antenna is the saturated one: once for the line-search candidate maximum
// and once for the closed-form heuristic. Any change in the solver or the
// gain formulas that moves these values is a regression.

#pragma once

namespace z3ro::golden {

inline constexpr double kGainProfile[64] = {
    0.053213352282312, 0.163214244635159, 0.166584036192566, 0.190058650274681,
    0.194027648183967, 0.221305207674275, 0.224434436025805, 0.22867466878558,
    0.237461545242343, 0.339660815011991, 0.348766107325234, 0.365154168953996,
    0.369988980521043, 0.371322381303105, 0.391389493605283, 0.392774094613704,
    0.418373855561396, 0.465848978787418, 0.475737060338957, 0.476731316967058,
    0.488759045763364, 0.55691539588424, 0.583560836920491, 0.599545738989174,
    0.609625101938071, 0.618355907461482, 0.621513605151698, 0.62821045950947,
    0.65284310533453, 0.653550454968265, 0.665969753203277, 0.672160417777694,
    0.672528831192371, 0.675275704952579, 0.685519064739124, 0.701780015883239,
    0.766220793467463, 0.778787679123411, 0.783789832108259, 0.792584312016267,
    0.841036073983063, 0.854558567193803, 0.856223102802192, 0.894018071201855,
    0.945834331058256, 1.00018010802579, 1.01272565167871, 1.07158224247022,
    1.08625448686505, 1.11461750064647, 1.14731437455377, 1.19114780539985,
    1.19527203677484, 1.24401338457075, 1.27532286800202, 1.33936428790193,
    1.34735091505926, 1.37281583734848, 1.44073995720981, 1.44700702546712,
    1.45766772805103, 1.59052061992992, 1.80159140106682, 1.80859924826983,
};

inline constexpr double kCandidateGainDb[64] = {
    11.8277504002775, 13.5352708731257, 13.5604671770224, 13.7175356208094,
    13.7412925233039, 13.8868950596224, 13.9018594420096, 13.9216323806003,
    13.9608560846731, 14.2914801372039, 14.3128232308411, 14.348823192979,
    14.3588889614734, 14.3616226374718, 14.4006666698685, 14.4032222109243,
    14.4475366912249, 14.5168570325664, 14.5294829923415, 14.5307213055625,
    14.5452658377746, 14.6142543914809, 14.6359253091695, 14.6477059728834,
    14.6546960387103, 14.6604890008024, 14.6625259568423, 14.6667459932429,
    14.681148163133, 14.6815367197642, 14.6881414195965, 14.6912835082615,
    14.6914674174004, 14.6928278457419, 14.6977357968997, 14.7050093708286,
    14.7281770370605, 14.7317421018347, 14.7330817257816, 14.7353301707856,
    14.7454186238176, 14.7475848667347, 14.7478330702395, 14.7524310793217,
    14.7557500756077, 14.7559449035386, 14.7555559367921, 14.7517588915686,
    14.7503374873204, 14.7470910025853, 14.7425748561054, 14.7353105741942,
    14.7345595145933, 14.7248566703501, 14.7178616026786, 14.7018540761568,
    14.6997073221593, 14.6926521823068, 14.6723545813345, 14.6703793037035,
    14.6669812701731, 14.6209281695798, 14.5359233109261, 14.5328914702699,
};

inline constexpr double kHeuristicGainDb[64] = {
    11.1996068007599, 13.1512485917305, 13.1804601510426, 13.3628336077322,
    13.3904599319167, 13.5600295013898, 13.5774825416837, 13.6005514092341,
    13.646339361984, 14.0339329920592, 14.0590811194105, 14.1015466163793,
    14.1134316542967, 14.1166603252554, 14.1628196718187, 14.1658440685245,
    14.2183578202589, 14.3008205905089, 14.3158922369886, 14.3173714287875,
    14.3347596250147, 14.4176901850986, 14.4439522366172, 14.4582888397096,
    14.4668192423869, 14.4739038145168, 14.476398431509, 14.4815727940608,
    14.4993026516391, 14.4997826879355, 14.5079580955064, 14.5118586492501,
    14.5120871932012, 14.5137786570748, 14.5198941285471, 14.5290001930581,
    14.5585084698828, 14.5631551856623, 14.5649124884143, 14.5678779971622,
    14.5815467317036, 14.5846082589399, 14.5849637338216, 14.5918336630212,
    14.5978036253822, 14.6002855677163, 14.6003620180839, 14.5984806189163,
    14.5974756649165, 14.5949751051601, 14.5912341011829, 14.5848941254387,
    14.5842245093525, 14.5754318598829, 14.5689874185985, 14.5540953044418,
    14.5520916640821, 14.5455060443576, 14.5266184284887, 14.5247892238545,
    14.5216473946103, 14.4799130175415, 14.4093620380165, 14.4070521727932,
};

} // namespace z3ro::golden
