// Copyright 2026 The Driftfilt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wavelet_tables.h"

namespace driftfilt::internal {

const std::vector<WaveletTableEntry>& WaveletTable() {
  static const auto* const kTable = new std::vector<WaveletTableEntry>{
    {WaveletFamily::kDb, "1",
     {0.70710678118654757, 0.70710678118654757},
     {0.70710678118654757, 0.70710678118654757}},
    {WaveletFamily::kDb, "2",
     {-0.12940952255126037, 0.22414386804201339, 0.83651630373780794,
         0.48296291314453416},
     {0.48296291314453416, 0.83651630373780794, 0.22414386804201339,
         -0.12940952255126037}},
    {WaveletFamily::kDb, "3",
     {0.035226291885709533, -0.085441273882026658, -0.13501102001025458,
         0.45987750211849154, 0.80689150931109255, 0.33267055295008263},
     {0.33267055295008263, 0.80689150931109255, 0.45987750211849154,
         -0.13501102001025458, -0.085441273882026658, 0.035226291885709533}},
    {WaveletFamily::kDb, "4",
     {-0.010597401785069032, 0.032883011666885197, 0.030841381835560764,
         -0.18703481171909309, -0.027983769416859854, 0.63088076792985892,
         0.71484657055291567, 0.23037781330889651},
     {0.23037781330889651, 0.71484657055291567, 0.63088076792985892,
         -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
         0.032883011666885197, -0.010597401785069032}},
    {WaveletFamily::kDb, "5",
     {0.0033357252854737712, -0.012580751999081999, -0.0062414902127982744,
         0.077571493840045719, -0.032244869584638375, -0.24229488706638203,
         0.13842814590132074, 0.72430852843777294, 0.60382926979718965,
         0.16010239797419293},
     {0.16010239797419293, 0.60382926979718965, 0.72430852843777294,
         0.13842814590132074, -0.24229488706638203, -0.032244869584638375,
         0.077571493840045719, -0.0062414902127982744, -0.012580751999081999,
         0.0033357252854737712}},
    {WaveletFamily::kDb, "6",
     {-0.0010773010853084796, 0.0047772575109455108, 0.00055384220116149613,
         -0.03158203931748603, 0.027522865530305727, 0.097501605587323043,
         -0.12976686756726194, -0.22626469396543983, 0.31525035170919763,
         0.75113390802109536, 0.49462389039845306, 0.11154074335010947},
     {0.11154074335010947, 0.49462389039845306, 0.75113390802109536,
         0.31525035170919763, -0.22626469396543983, -0.12976686756726194,
         0.097501605587323043, 0.027522865530305727, -0.03158203931748603,
         0.00055384220116149613, 0.0047772575109455108, -0.0010773010853084796}},
    {WaveletFamily::kDb, "7",
     {0.00035371379997452024, -0.0018016407040474908, 0.00042957797292136651,
         0.01255099855609984, -0.016574541630666881, -0.038029936935014413,
         0.080612609151083078, 0.071309219266830259, -0.22403618499387498,
         -0.14390600392856498, 0.46978228740519312, 0.72913209084623509,
         0.39653931948191729, 0.077852054085009184},
     {0.077852054085009184, 0.39653931948191729, 0.72913209084623509,
         0.46978228740519312, -0.14390600392856498, -0.22403618499387498,
         0.071309219266830259, 0.080612609151083078, -0.038029936935014413,
         -0.016574541630666881, 0.01255099855609984, 0.00042957797292136651,
         -0.0018016407040474908, 0.00035371379997452024}},
    {WaveletFamily::kDb, "8",
     {-0.00011747678412476953, 0.00067544940645056933, -0.00039174037337694705,
         -0.0048703529934515741, 0.0087460940474057766, 0.013981027917398282,
         -0.044088253930794755, -0.017369301001807547, 0.12874742662047847,
         0.00047248457391328279, -0.28401554296154691, -0.015829105256349306,
         0.58535468365420673, 0.67563073629728976, 0.31287159091429995,
         0.054415842243104008},
     {0.054415842243104008, 0.31287159091429995, 0.67563073629728976,
         0.58535468365420673, -0.015829105256349306, -0.28401554296154691,
         0.00047248457391328279, 0.12874742662047847, -0.017369301001807547,
         -0.044088253930794755, 0.013981027917398282, 0.0087460940474057766,
         -0.0048703529934515741, -0.00039174037337694705, 0.00067544940645056933,
         -0.00011747678412476953}},
    {WaveletFamily::kDb, "9",
     {3.9347320316271603e-05, -0.00025196318894271012, 0.00023038576352319597,
         0.0018476468830562265, -0.0042815036824634303, -0.0047232047577513972,
         0.022361662123679096, 0.00025094711483145197, -0.067632829061329974,
         0.03072568147933338, 0.14854074933810638, -0.096840783222976456,
         -0.29327378327917492, 0.13319738582500756, 0.65728807805130052,
         0.60482312369011115, 0.24383467461259034, 0.038077947363878345},
     {0.038077947363878345, 0.24383467461259034, 0.60482312369011115,
         0.65728807805130052, 0.13319738582500756, -0.29327378327917492,
         -0.096840783222976456, 0.14854074933810638, 0.03072568147933338,
         -0.067632829061329974, 0.00025094711483145197, 0.022361662123679096,
         -0.0047232047577513972, -0.0042815036824634303, 0.0018476468830562265,
         0.00023038576352319597, -0.00025196318894271012, 3.9347320316271603e-05}},
    {WaveletFamily::kDb, "10",
     {-1.3264202894521244e-05, 9.3588670320069592e-05, -0.00011646685512928545,
         -0.00068585669495971162, 0.0019924052951850561, 0.0013953517470529011,
         -0.010733175483330575, 0.0036065535669561697, 0.033212674059341002,
         -0.029457536821875813, -0.071394147166397082, 0.093057364603572348,
         0.12736934033579325, -0.19594627437737705, -0.24984642432731538,
         0.28117234366057747, 0.68845903945360354, 0.52720118893172563,
         0.1881768000776915, 0.026670057900555554},
     {0.026670057900555554, 0.1881768000776915, 0.52720118893172563,
         0.68845903945360354, 0.28117234366057747, -0.24984642432731538,
         -0.19594627437737705, 0.12736934033579325, 0.093057364603572348,
         -0.071394147166397082, -0.029457536821875813, 0.033212674059341002,
         0.0036065535669561697, -0.010733175483330575, 0.0013953517470529011,
         0.0019924052951850561, -0.00068585669495971162, -0.00011646685512928545,
         9.3588670320069592e-05, -1.3264202894521244e-05}},
    {WaveletFamily::kSym, "2",
     {-0.12940952255126037, 0.22414386804201339, 0.83651630373780794,
         0.48296291314453416},
     {0.48296291314453416, 0.83651630373780794, 0.22414386804201339,
         -0.12940952255126037}},
    {WaveletFamily::kSym, "3",
     {0.035226291885709533, -0.085441273882026658, -0.13501102001025458,
         0.45987750211849154, 0.80689150931109255, 0.33267055295008263},
     {0.33267055295008263, 0.80689150931109255, 0.45987750211849154,
         -0.13501102001025458, -0.085441273882026658, 0.035226291885709533}},
    {WaveletFamily::kSym, "4",
     {-0.075765714789502212, -0.029635527646002493, 0.49761866763277501,
         0.8037387518051321, 0.29785779560530606, -0.099219543576633526,
         -0.012603967262031304, 0.032223100604051466},
     {0.032223100604051466, -0.012603967262031304, -0.099219543576633526,
         0.29785779560530606, 0.8037387518051321, 0.49761866763277501,
         -0.029635527646002493, -0.075765714789502212}},
    {WaveletFamily::kSym, "5",
     {0.027333068344998768, 0.029519490925706261, -0.039134249302313844,
         0.19939753397685558, 0.72340769040404074, 0.63397896345679206,
         0.016602105764510849, -0.17532808990805623, -0.021101834024689042,
         0.019538882735249827},
     {0.019538882735249827, -0.021101834024689042, -0.17532808990805623,
         0.016602105764510849, 0.63397896345679206, 0.72340769040404074,
         0.19939753397685558, -0.039134249302313844, 0.029519490925706261,
         0.027333068344998768}},
    {WaveletFamily::kSym, "6",
     {0.015404109327044824, 0.0034907120842221626, -0.11799011114852002,
         -0.048311742585698057, 0.49105594192797375, 0.78764114102865102,
         0.33792942172816581, -0.072637522786376585, -0.021060292512370848,
         0.044724901770781388, 0.0017677118642540077, -0.0078007083250323803},
     {-0.0078007083250323803, 0.0017677118642540077, 0.044724901770781388,
         -0.021060292512370848, -0.072637522786376585, 0.33792942172816581,
         0.78764114102865102, 0.49105594192797375, -0.048311742585698057,
         -0.11799011114852002, 0.0034907120842221626, 0.015404109327044824}},
    {WaveletFamily::kSym, "7",
     {0.0026818145682601471, -0.001047384888679738, -0.012636303403240567,
         0.030515513165877885, 0.067892693501220569, -0.049552834937042829,
         0.017441255086835708, 0.5361019170905692, 0.7677643170048829,
         0.28862963175064787, -0.14004724044293365, -0.10780823770328972,
         0.0040102448715223955, 0.010268176708464817},
     {0.010268176708464817, 0.0040102448715223955, -0.10780823770328972,
         -0.14004724044293365, 0.28862963175064787, 0.7677643170048829,
         0.5361019170905692, 0.017441255086835708, -0.049552834937042829,
         0.067892693501220569, 0.030515513165877885, -0.012636303403240567,
         -0.001047384888679738, 0.0026818145682601471}},
    {WaveletFamily::kSym, "8",
     {-0.0033824159510050028, -0.00054213233180001072, 0.031695087811525989,
         0.0076074873249766086, -0.14329423835127267, -0.061273359067811076,
         0.48135965125905339, 0.777185751699628, 0.36444189483617895,
         -0.051945838107881802, -0.027219029917103486, 0.04913717967373029,
         0.0038087520138944896, -0.014952258337062199, -0.00030292051472413309,
         0.0018899503327676891},
     {0.0018899503327676891, -0.00030292051472413309, -0.014952258337062199,
         0.0038087520138944896, 0.04913717967373029, -0.027219029917103486,
         -0.051945838107881802, 0.36444189483617895, 0.777185751699628,
         0.48135965125905339, -0.061273359067811076, -0.14329423835127267,
         0.0076074873249766086, 0.031695087811525989, -0.00054213233180001072,
         -0.0033824159510050028}},
    {WaveletFamily::kCoif, "1",
     {-0.015655728135791993, -0.07273261951252645, 0.38486484686485778,
         0.85257202021160039, 0.33789766245748182, -0.07273261951252645},
     {-0.07273261951252645, 0.33789766245748182, 0.85257202021160039,
         0.38486484686485778, -0.07273261951252645, -0.015655728135791993}},
    {WaveletFamily::kCoif, "2",
     {-0.00072054944552034698, -0.0018232088709110323, 0.0056114348193688343,
         0.02368017194684777, -0.059434418646431092, -0.076488599078280761,
         0.41700518442323908, 0.81272363544941351, 0.38611006682276289,
         -0.067372554723725595, -0.041464936786871777, 0.016387336463203641},
     {0.016387336463203641, -0.041464936786871777, -0.067372554723725595,
         0.38611006682276289, 0.81272363544941351, 0.41700518442323908,
         -0.076488599078280761, -0.059434418646431092, 0.02368017194684777,
         0.0056114348193688343, -0.0018232088709110323, -0.00072054944552034698}},
    {WaveletFamily::kCoif, "3",
     {-3.4599773197272781e-05, -7.0983302506379004e-05, 0.00046621695982040288,
         0.0011175187708306303, -0.0025745176881367972, -0.0090079761367306242,
         0.015880544863669452, 0.034555027573297738, -0.082301927106299827,
         -0.071799821619154838, 0.42848347637737, 0.79377722262608719,
         0.40517690240911824, -0.061123390002972552, -0.065771911281469364,
         0.023452696142077168, 0.0077825964256727463, -0.0037935128643808019},
     {-0.0037935128643808019, 0.0077825964256727463, 0.023452696142077168,
         -0.065771911281469364, -0.061123390002972552, 0.40517690240911824,
         0.79377722262608719, 0.42848347637737, -0.071799821619154838,
         -0.082301927106299827, 0.034555027573297738, 0.015880544863669452,
         -0.0090079761367306242, -0.0025745176881367972, 0.0011175187708306303,
         0.00046621695982040288, -7.0983302506379004e-05, -3.4599773197272781e-05}},
    {WaveletFamily::kCoif, "4",
     {-1.7849909144933469e-06, -3.259647940030751e-06, 3.1229861599195265e-05,
         6.2338854312787192e-05, -0.00025997433712225682, -0.00058902022463321654,
         0.0012665610789256603, 0.0037514346971460866, -0.0056582838001308835,
         -0.015211728187697211, 0.025082253337949612, 0.039334422605589149,
         -0.096220424535952642, -0.066627472366817167, 0.43438603311435653,
         0.78223893442428261, 0.41530842700068227, -0.056077319603569258,
         -0.081266710249193727, 0.02668230466960483, 0.016068947131575029,
         -0.0073461679362680507, -0.001629492425226786, 0.00089231390253700297},
     {0.00089231390253700297, -0.001629492425226786, -0.0073461679362680507,
         0.016068947131575029, 0.02668230466960483, -0.081266710249193727,
         -0.056077319603569258, 0.41530842700068227, 0.78223893442428261,
         0.43438603311435653, -0.066627472366817167, -0.096220424535952642,
         0.039334422605589149, 0.025082253337949612, -0.015211728187697211,
         -0.0056582838001308835, 0.0037514346971460866, 0.0012665610789256603,
         -0.00058902022463321654, -0.00025997433712225682, 6.2338854312787192e-05,
         3.1229861599195265e-05, -3.259647940030751e-06, -1.7849909144933469e-06}},
    {WaveletFamily::kCoif, "5",
     {-9.6040101127678941e-08, -1.6237995172048338e-07, 2.0612203985788783e-06,
         3.7007277113394796e-06, -2.1270221672515614e-05, -4.1219861924265501e-05,
         0.00014035632812373243, 0.00030185794166824478, -0.00063755892612588115,
         -0.0016616273039298788, 0.0024315754425382886, 0.0067615202206204169,
         -0.0091595073386761625, -0.019758391600965465, 0.032674799467057355,
         0.041287530472117834, -0.10556315130733723, -0.06203775157498196,
         0.43798230665916338, 0.77429362286032744, 0.42157126673075435,
         -0.052046670253554764, -0.091921588060086087, 0.028169744270532353,
         0.023408322118927783, -0.010131584846900276, -0.0041593126275786402,
         0.0021782943778456947, 0.00035857774116175768, -0.000212081862067494},
     {-0.000212081862067494, 0.00035857774116175768, 0.0021782943778456947,
         -0.0041593126275786402, -0.010131584846900276, 0.023408322118927783,
         0.028169744270532353, -0.091921588060086087, -0.052046670253554764,
         0.42157126673075435, 0.77429362286032744, 0.43798230665916338,
         -0.06203775157498196, -0.10556315130733723, 0.041287530472117834,
         0.032674799467057355, -0.019758391600965465, -0.0091595073386761625,
         0.0067615202206204169, 0.0024315754425382886, -0.0016616273039298788,
         -0.00063755892612588115, 0.00030185794166824478, 0.00014035632812373243,
         -4.1219861924265501e-05, -2.1270221672515614e-05, 3.7007277113394796e-06,
         2.0612203985788783e-06, -1.6237995172048338e-07, -9.6040101127678941e-08}},
    {WaveletFamily::kBior, "1.1",
     {0.70710678118654757, 0.70710678118654757},
     {0.70710678118654757, 0.70710678118654757}},
    {WaveletFamily::kBior, "1.3",
     {-0.088388347648318447, 0.088388347648318447, 0.70710678118654757,
         0.70710678118654757, 0.088388347648318447, -0.088388347648318447},
     {0, 0, 0.70710678118654757,
         0.70710678118654757, 0, 0}},
    {WaveletFamily::kBior, "1.5",
     {0.016572815184059706, -0.016572815184059706, -0.12153397801643785,
         0.12153397801643785, 0.70710678118654757, 0.70710678118654757,
         0.12153397801643785, -0.12153397801643785, -0.016572815184059706,
         0.016572815184059706},
     {0, 0, 0,
         0, 0.70710678118654757, 0.70710678118654757,
         0, 0, 0,
         0}},
    {WaveletFamily::kBior, "2.2",
     {0, -0.17677669529663689, 0.35355339059327379,
         1.0606601717798212, 0.35355339059327379, -0.17677669529663689},
     {0, 0.35355339059327379, 0.70710678118654757,
         0.35355339059327379, 0, 0}},
    {WaveletFamily::kBior, "2.4",
     {0, 0.033145630368119412, -0.066291260736238825,
         -0.17677669529663689, 0.4198446513295126, 0.99436891104358249,
         0.4198446513295126, -0.17677669529663689, -0.066291260736238825,
         0.033145630368119412},
     {0, 0, 0,
         0.35355339059327379, 0.70710678118654757, 0.35355339059327379,
         0, 0, 0,
         0}},
    {WaveletFamily::kBior, "2.6",
     {0, -0.0069053396600248784, 0.013810679320049757,
         0.046956309688169169, -0.1077232986963881, -0.16987135563661201,
         0.44746600996961211, 0.96674755240348298, 0.44746600996961211,
         -0.16987135563661201, -0.1077232986963881, 0.046956309688169169,
         0.013810679320049757, -0.0069053396600248784},
     {0, 0, 0,
         0, 0, 0.35355339059327379,
         0.70710678118654757, 0.35355339059327379, 0,
         0, 0, 0,
         0, 0}},
    {WaveletFamily::kBior, "2.8",
     {0, 0.0015105430506304422, -0.0030210861012608843,
         -0.012947511862546647, 0.028916109826354178, 0.052998481890690938,
         -0.13491307360773605, -0.16382918343409023, 0.46257144047591653,
         0.95164212189717856, 0.46257144047591653, -0.16382918343409023,
         -0.13491307360773605, 0.052998481890690938, 0.028916109826354178,
         -0.012947511862546647, -0.0030210861012608843, 0.0015105430506304422},
     {0, 0, 0,
         0, 0, 0,
         0, 0.35355339059327379, 0.70710678118654757,
         0.35355339059327379, 0, 0,
         0, 0, 0,
         0, 0, 0}},
    {WaveletFamily::kBior, "3.1",
     {-0.35355339059327379, 1.0606601717798212, 1.0606601717798212,
         -0.35355339059327379},
     {0.17677669529663689, 0.5303300858899106, 0.5303300858899106,
         0.17677669529663689}},
    {WaveletFamily::kBior, "3.3",
     {0.066291260736238825, -0.19887378220871649, -0.15467960838455727,
         0.99436891104358249, 0.99436891104358249, -0.15467960838455727,
         -0.19887378220871649, 0.066291260736238825},
     {0, 0, 0.17677669529663689,
         0.5303300858899106, 0.5303300858899106, 0.17677669529663689,
         0, 0}},
    {WaveletFamily::kBior, "3.5",
     {-0.013810679320049757, 0.041432037960149271, 0.052480581416189075,
         -0.26792717880896527, -0.07181553246425873, 0.96674755240348298,
         0.96674755240348298, -0.07181553246425873, -0.26792717880896527,
         0.052480581416189075, 0.041432037960149271, -0.013810679320049757},
     {0, 0, 0,
         0, 0.17677669529663689, 0.5303300858899106,
         0.5303300858899106, 0.17677669529663689, 0,
         0, 0, 0}},
    {WaveletFamily::kRbio, "1.1",
     {0.70710678118654757, 0.70710678118654757},
     {0.70710678118654757, 0.70710678118654757}},
    {WaveletFamily::kRbio, "1.3",
     {0, 0, 0.70710678118654757,
         0.70710678118654757, 0, 0},
     {-0.088388347648318447, 0.088388347648318447, 0.70710678118654757,
         0.70710678118654757, 0.088388347648318447, -0.088388347648318447}},
    {WaveletFamily::kRbio, "1.5",
     {0, 0, 0,
         0, 0.70710678118654757, 0.70710678118654757,
         0, 0, 0,
         0},
     {0.016572815184059706, -0.016572815184059706, -0.12153397801643785,
         0.12153397801643785, 0.70710678118654757, 0.70710678118654757,
         0.12153397801643785, -0.12153397801643785, -0.016572815184059706,
         0.016572815184059706}},
    {WaveletFamily::kRbio, "2.2",
     {0, 0, 0.35355339059327379,
         0.70710678118654757, 0.35355339059327379, 0},
     {-0.17677669529663689, 0.35355339059327379, 1.0606601717798212,
         0.35355339059327379, -0.17677669529663689, 0}},
    {WaveletFamily::kRbio, "2.4",
     {0, 0, 0,
         0, 0.35355339059327379, 0.70710678118654757,
         0.35355339059327379, 0, 0,
         0},
     {0.033145630368119412, -0.066291260736238825, -0.17677669529663689,
         0.4198446513295126, 0.99436891104358249, 0.4198446513295126,
         -0.17677669529663689, -0.066291260736238825, 0.033145630368119412,
         0}},
    {WaveletFamily::kRbio, "2.6",
     {0, 0, 0,
         0, 0, 0,
         0.35355339059327379, 0.70710678118654757, 0.35355339059327379,
         0, 0, 0,
         0, 0},
     {-0.0069053396600248784, 0.013810679320049757, 0.046956309688169169,
         -0.1077232986963881, -0.16987135563661201, 0.44746600996961211,
         0.96674755240348298, 0.44746600996961211, -0.16987135563661201,
         -0.1077232986963881, 0.046956309688169169, 0.013810679320049757,
         -0.0069053396600248784, 0}},
    {WaveletFamily::kRbio, "2.8",
     {0, 0, 0,
         0, 0, 0,
         0, 0, 0.35355339059327379,
         0.70710678118654757, 0.35355339059327379, 0,
         0, 0, 0,
         0, 0, 0},
     {0.0015105430506304422, -0.0030210861012608843, -0.012947511862546647,
         0.028916109826354178, 0.052998481890690938, -0.13491307360773605,
         -0.16382918343409023, 0.46257144047591653, 0.95164212189717856,
         0.46257144047591653, -0.16382918343409023, -0.13491307360773605,
         0.052998481890690938, 0.028916109826354178, -0.012947511862546647,
         -0.0030210861012608843, 0.0015105430506304422, 0}},
    {WaveletFamily::kRbio, "3.1",
     {0.17677669529663689, 0.5303300858899106, 0.5303300858899106,
         0.17677669529663689},
     {-0.35355339059327379, 1.0606601717798212, 1.0606601717798212,
         -0.35355339059327379}},
    {WaveletFamily::kRbio, "3.3",
     {0, 0, 0.17677669529663689,
         0.5303300858899106, 0.5303300858899106, 0.17677669529663689,
         0, 0},
     {0.066291260736238825, -0.19887378220871649, -0.15467960838455727,
         0.99436891104358249, 0.99436891104358249, -0.15467960838455727,
         -0.19887378220871649, 0.066291260736238825}},
    {WaveletFamily::kRbio, "3.5",
     {0, 0, 0,
         0, 0.17677669529663689, 0.5303300858899106,
         0.5303300858899106, 0.17677669529663689, 0,
         0, 0, 0},
     {-0.013810679320049757, 0.041432037960149271, 0.052480581416189075,
         -0.26792717880896527, -0.07181553246425873, 0.96674755240348298,
         0.96674755240348298, -0.07181553246425873, -0.26792717880896527,
         0.052480581416189075, 0.041432037960149271, -0.013810679320049757}},
  };
  return *kTable;
}

}  // namespace driftfilt::internal
