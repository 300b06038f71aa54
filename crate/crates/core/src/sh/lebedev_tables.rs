// Generated from the Lebedev-Laikov generator tables; do not edit by hand.
// Each entry: (orbit code, a, b, weight / 4pi).

pub(crate) const LEBEDEV_6: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.1666666666666667),
];

pub(crate) const LEBEDEV_14: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.06666666666666667),
    (3, 0.0, 0.0, 0.075),
];

pub(crate) const LEBEDEV_26: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.04761904761904762),
    (2, 0.0, 0.0, 0.0380952380952381),
    (3, 0.0, 0.0, 0.03214285714285714),
];

pub(crate) const LEBEDEV_50: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.0126984126984127),
    (2, 0.0, 0.0, 0.02257495590828924),
    (3, 0.0, 0.0, 0.02109375),
    (4, 0.3015113445777636, 0.0, 0.02017333553791887),
];

pub(crate) const LEBEDEV_110: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.003828270494937162),
    (3, 0.0, 0.0, 0.009793737512487513),
    (4, 0.1851156353447362, 0.0, 0.008211737283191111),
    (4, 0.6904210483822922, 0.0, 0.009942814891178103),
    (4, 0.3956894730559419, 0.0, 0.009595471336070962),
    (5, 0.4783690288121502, 0.0, 0.009694996361663029),
];

pub(crate) const LEBEDEV_194: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.001782340447244611),
    (2, 0.0, 0.0, 0.005716905949977102),
    (3, 0.0, 0.0, 0.005573383178848738),
    (4, 0.6712973442695226, 0.0, 0.005608704082587997),
    (4, 0.2892465627575439, 0.0, 0.005158237711805383),
    (4, 0.4446933178717437, 0.0, 0.005518771467273614),
    (4, 0.1299335447650067, 0.0, 0.004106777028169394),
    (5, 0.3457702197611283, 0.0, 0.005051846064614808),
    (6, 0.159041710538353, 0.8360360154824589, 0.005530248916233094),
];

pub(crate) const LEBEDEV_302: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.0008545911725128148),
    (3, 0.0, 0.0, 0.003599119285025571),
    (4, 0.3515640345570105, 0.0, 0.003449788424305883),
    (4, 0.6566329410219612, 0.0, 0.003604822601419882),
    (4, 0.4729054132581005, 0.0, 0.003576729661743367),
    (4, 0.09618308522614784, 0.0, 0.002352101413689164),
    (4, 0.2219645236294178, 0.0, 0.003108953122413675),
    (4, 0.7011766416089545, 0.0, 0.003650045807677255),
    (5, 0.2644152887060663, 0.0, 0.002982344963171804),
    (5, 0.5718955891878961, 0.0, 0.00360082093221646),
    (6, 0.2510034751770465, 0.8000727494073951, 0.003571540554273387),
    (6, 0.1233548532583327, 0.4127724083168531, 0.00339231220500617),
];

pub(crate) const LEBEDEV_590: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.0003095121295306187),
    (3, 0.0, 0.0, 0.001852379698597489),
    (4, 0.7040954938227469, 0.0, 0.001871790639277744),
    (4, 0.6807744066455244, 0.0, 0.001858812585438317),
    (4, 0.6372546939258752, 0.0, 0.001852028828296213),
    (4, 0.5044419707800358, 0.0, 0.001846715956151242),
    (4, 0.4215761784010967, 0.0, 0.001818471778162769),
    (4, 0.3317920736472123, 0.0, 0.001749564657281154),
    (4, 0.2384736701421887, 0.0, 0.001617210647254411),
    (4, 0.1459036449157763, 0.0, 0.001384737234851692),
    (4, 0.06095034115507196, 0.0, 0.000976433116505105),
    (5, 0.6116843442009876, 0.0, 0.001857161196774078),
    (5, 0.3964755348199858, 0.0, 0.001705153996395864),
    (5, 0.1724782009907724, 0.0, 0.001300321685886048),
    (6, 0.561026380862206, 0.3518280927733519, 0.001842866472905286),
    (6, 0.474239284255198, 0.263471665593795, 0.001802658934377451),
    (6, 0.598412649788538, 0.1816640840360209, 0.00184983056044366),
    (6, 0.3791035407695563, 0.1720795225656878, 0.001713904507106709),
    (6, 0.2778673190586244, 0.08213021581932511, 0.001555213603396808),
    (6, 0.5033564271075117, 0.08999205842074876, 0.001802239128008525),
];

pub(crate) const LEBEDEV_1202: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 0.0001105189233267572),
    (2, 0.0, 0.0, 0.0009205232738090741),
    (3, 0.0, 0.0, 0.0009133159786443561),
    (4, 0.03712636449657089, 0.0, 0.0003690421898017899),
    (4, 0.09140060412262223, 0.0, 0.000560399092868066),
    (4, 0.1531077852469906, 0.0, 0.0006865297629282609),
    (4, 0.2180928891660612, 0.0, 0.000772033855114563),
    (4, 0.2839874532200175, 0.0, 0.0008301545958894795),
    (4, 0.3491177600963764, 0.0, 0.0008686692550179628),
    (4, 0.4121431461444309, 0.0, 0.000892707628584689),
    (4, 0.4718993627149127, 0.0, 0.0009060820238568219),
    (4, 0.5273145452842337, 0.0, 0.0009119777254940867),
    (4, 0.6209475332444019, 0.0, 0.0009128720138604181),
    (4, 0.6569722711857291, 0.0, 0.0009130714935691735),
    (4, 0.6841788309070143, 0.0, 0.0009152873784554116),
    (4, 0.7012604330123631, 0.0, 0.0009187436274321654),
    (5, 0.1072382215478166, 0.0, 0.0005176977312965694),
    (5, 0.2582068959496968, 0.0, 0.0007331143682101417),
    (5, 0.4172752955306717, 0.0, 0.0008463232836379928),
    (5, 0.5700366911792503, 0.0, 0.0009031122694253992),
    (6, 0.9827986018263947, 0.1771774022615325, 0.0006485778453163257),
    (6, 0.9624249230326228, 0.2475716463426288, 0.0007435030910982369),
    (6, 0.9402007994128811, 0.3354616289066489, 0.0007998527891839054),
    (6, 0.9320822040143202, 0.3173615246611977, 0.0008101731497468018),
    (6, 0.9043674199393299, 0.4090268427085357, 0.000848338957459433),
    (6, 0.8912407560074747, 0.3854291150669224, 0.0008556299257311812),
    (6, 0.8676435628462708, 0.4932221184851285, 0.000880320867973826),
    (6, 0.8581979986041619, 0.4785320675922435, 0.000881104818242572),
    (6, 0.8396753624049856, 0.4507422593157064, 0.0008850282341265444),
    (6, 0.8165288564022188, 0.56321230207621, 0.0009021342299040653),
    (6, 0.8015469370783529, 0.54343035696939, 0.0009010091677105086),
    (6, 0.777356306907035, 0.5123518486419871, 0.0009022692938426915),
    (6, 0.7661621213900394, 0.6394279634749102, 0.0009158016174693465),
    (6, 0.755358414353351, 0.6269805509024392, 0.0009131578003189435),
    (6, 0.7344305757559503, 0.603116169309631, 0.0009107813579482705),
    (6, 0.7043837184021765, 0.5693702498468441, 0.0009105760258970126),
];

pub(crate) const LEBEDEV_2702: &[(u8, f64, f64, f64)] = &[
    (1, 0.0, 0.0, 2.998675149888161e-05),
    (3, 0.0, 0.0, 0.0004077860529495355),
    (4, 0.02065562538818703, 0.0, 0.0001185349192520667),
    (4, 0.05250918173022379, 0.0, 0.0001913408643425751),
    (4, 0.08993480082038376, 0.0, 0.0002452886577209897),
    (4, 0.1306023924436019, 0.0, 0.0002862408183288702),
    (4, 0.1732060388531418, 0.0, 0.0003178032258257357),
    (4, 0.2168727084820249, 0.0, 0.000342294566763369),
    (4, 0.2609528309173586, 0.0, 0.0003612790520235922),
    (4, 0.3049252927938952, 0.0, 0.0003758638229818521),
    (4, 0.3483484138084404, 0.0, 0.0003868711798859953),
    (4, 0.3908321549106406, 0.0, 0.0003949429933189938),
    (4, 0.4320210071894814, 0.0, 0.0004006068107541156),
    (4, 0.4715824795890053, 0.0, 0.0004043192149672723),
    (4, 0.5091984794078454, 0.0, 0.0004064947495808078),
    (4, 0.5445580145650804, 0.0, 0.0004075245619813152),
    (4, 0.6072575796841768, 0.0, 0.0004076423540893566),
    (4, 0.6339484505755802, 0.0, 0.0004074280862251555),
    (4, 0.6570718257486958, 0.0, 0.0004074163756012244),
    (4, 0.6762557330090709, 0.0, 0.0004077647795071246),
    (4, 0.691116169692379, 0.0, 0.000408451755278253),
    (4, 0.701284191165996, 0.0, 0.0004092468459224052),
    (4, 0.706455927241002, 0.0, 0.0004097872687240906),
    (5, 0.06123554989894765, 0.0, 0.0001738986811745028),
    (5, 0.1533070348312393, 0.0, 0.0002659616045280191),
    (5, 0.2563902605244206, 0.0, 0.0003240596008171533),
    (5, 0.3629346991663361, 0.0, 0.0003621195964432943),
    (5, 0.4683949968987538, 0.0, 0.0003868838330760539),
    (5, 0.5694479240657953, 0.0, 0.0004018911532693111),
    (5, 0.6634465430993955, 0.0, 0.0004089929432983252),
    (6, 0.1033958573552305, 0.03034544009063584, 0.0002279907527706409),
    (6, 0.1473521412414395, 0.06618803044247135, 0.0002715205490578897),
    (6, 0.1924552158705967, 0.1054431128987715, 0.0003057917896703976),
    (6, 0.2381094362890328, 0.1468263551238858, 0.0003326913052452555),
    (6, 0.283812170793676, 0.1894486108187886, 0.0003537334711890037),
    (6, 0.3291323133373415, 0.2326374238761579, 0.0003700567500783129),
    (6, 0.373689697874146, 0.2758485808485768, 0.0003825245372589122),
    (6, 0.4171406040760013, 0.3186179331996921, 0.0003918125171518296),
    (6, 0.4591677985256915, 0.3605329796303794, 0.0003984720419937579),
    (6, 0.4994733831718418, 0.4012147253586509, 0.0004029746003338211),
    (6, 0.5377731830445096, 0.4403050025570692, 0.0004057428632156627),
    (6, 0.5737917830001331, 0.4774565904277483, 0.0004071719274114857),
    (6, 0.2027323586271389, 0.03544122504976147, 0.0002990236950664119),
    (6, 0.2516942375187273, 0.07418304388646328, 0.0003262951734212878),
    (6, 0.3000227995257181, 0.1150502745727186, 0.0003482634608242413),
    (6, 0.3474806691046342, 0.1571963371209364, 0.0003656596681700892),
    (6, 0.3938103180359209, 0.19996318772471, 0.0003791740467794218),
    (6, 0.4387519590455703, 0.2428073457846535, 0.0003894034450156905),
    (6, 0.4820503960077787, 0.2852575132906155, 0.0003968600245508371),
    (6, 0.5234573778475101, 0.3268884208674639, 0.000401993135142005),
    (6, 0.5627318647235282, 0.3673033321675939, 0.0004052108801278599),
    (6, 0.5996390607156954, 0.406121155183029, 0.0004068978613940934),
    (6, 0.3084780753791947, 0.03860125523100059, 0.0003454275351319704),
    (6, 0.3589988275920223, 0.07928938987104867, 0.000362996353700792),
    (6, 0.4078628415881973, 0.1212614643030087, 0.0003770187233889873),
    (6, 0.4549287258889735, 0.1638770827382693, 0.0003878608613694378),
    (6, 0.5000278512957279, 0.2065965798260176, 0.0003959065270221274),
    (6, 0.5429785044928199, 0.2489436378852235, 0.000401528697546357),
    (6, 0.5835939850491711, 0.2904811368946891, 0.0004050866785614717),
    (6, 0.6216870353444856, 0.3307941957666609, 0.0004069320185051913),
    (6, 0.4151104662709091, 0.04064829146052554, 0.0003760120964062763),
    (6, 0.4649804275009218, 0.08258424547294756, 0.0003870969564418064),
    (6, 0.5124695757009662, 0.1251841962027289, 0.0003955287790534055),
    (6, 0.5574711100606224, 0.1679107505976331, 0.0004015361911302668),
    (6, 0.5998597333287227, 0.2102805057358715, 0.0004053836986719548),
    (6, 0.63950071485166, 0.2518418087774107, 0.0004073578673299117),
    (6, 0.5188456224746252, 0.04194321676077518, 0.0003954628379231406),
    (6, 0.5664190707942778, 0.08457661551921498, 0.000401764550884753),
    (6, 0.6110464353283153, 0.1273652932519396, 0.0004059030348651293),
    (6, 0.6526430302051563, 0.1698173239076354, 0.000408056580948488),
    (6, 0.6167551880377548, 0.04266398851548864, 0.0004063018753664651),
    (6, 0.6607195418355383, 0.0855192581423835, 0.0004087191292799671),
];

pub(crate) const TABLES: &[(usize, &[(u8, f64, f64, f64)])] = &[
    (6, LEBEDEV_6),
    (14, LEBEDEV_14),
    (26, LEBEDEV_26),
    (50, LEBEDEV_50),
    (110, LEBEDEV_110),
    (194, LEBEDEV_194),
    (302, LEBEDEV_302),
    (590, LEBEDEV_590),
    (1202, LEBEDEV_1202),
    (2702, LEBEDEV_2702),
];
