// Generated by gen_gp_oracles.py; do not edit.
#pragma once

namespace oracle {

inline constexpr int kGpN = 20, kGpQ = 5, kGpD = 2;

struct GpProblem {
  double signal_variance, length_scales[2], noise;
  double x[20][2];
  int num_events[20];
  double events[20][2][2];
  double y[20];
  double xq[5][2];
  // Routine inputs only.
  double evidence_centred, evidence_raw;
  double mean_centred[5], mean_raw[5], latent_var[5];
  // Inputs [x; sum of event vectors], centred targets.
  double evidence_events, mean_events[5], latent_var_events[5];
  double xq_events[5][2][2];
  int num_events_q[5];
};

inline constexpr GpProblem kGpProblems[] = {
    {2.02, {1.611, 0.74}, 0.083, {{0.718243, 0.865004}, {0.334657, 0.231602}, {0.677999, 0.901279}, {0.124263, 0.049937}, {0.358126, 0.299446}, {0.601732, 0.181677}, {0.031018, 0.326705}, {0.234913, 0.301099}, {0.415073, 0.210108}, {0.97376, 0.621805}, {0.730177, 0.374403}, {0.93551, 0.839765}, {0.246583, 0.710851}, {0.945075, 0.571422}, {0.37037, 0.377076}, {0.833951, 0.534217}, {0.935149, 0.686505}, {0.818211, 0.66581}, {0.376144, 0.328989}, {0.959067, 0.698841}}, {1, 1, 0, 2, 1, 2, 1, 1, 0, 0, 2, 2, 0, 2, 0, 2, 2, 1, 2, 2}, {{{0.32567, 0.208447}, {0.521437, 0.010873}}, {{0.836977, 0.017391}, {0.237436, 0.838076}}, {{0.372288, 0.527175}, {0.823737, 0.697838}}, {{0.551249, 0.146005}, {0.926284, 0.075093}}, {{0.252845, 0.824692}, {0.785115, 0.009871}}, {{0.733221, 0.265278}, {0.96383, 0.135068}}, {{0.238481, 0.948766}, {0.348182, 0.467318}}, {{0.048456, 0.287324}, {0.158045, 0.898774}}, {{0.614275, 0.411709}, {0.184239, 0.622587}}, {{0.741938, 0.823856}, {0.899749, 0.953391}}, {{0.705565, 0.799351}, {0.804204, 0.335652}}, {{0.694103, 0.07129}, {0.37145, 0.414708}}, {{0.944024, 0.287714}, {0.361037, 0.193176}}, {{0.216866, 0.147597}, {0.887783, 0.770948}}, {{0.744741, 0.854814}, {0.346692, 0.318346}}, {{0.792373, 0.27575}, {0.622014, 0.041239}}, {{0.572865, 0.539878}, {0.719874, 0.298793}}, {{0.245314, 0.704266}, {0.162456, 0.921986}}, {{0.881302, 0.869198}, {0.514329, 0.173207}}, {{0.435541, 0.371594}, {0.192935, 0.998764}}}, {1.496991, -0.80017, 0.97111, 0.248462, 3.174743, 2.708784, 1.12244, 0.477697, -0.87684, -0.359699, 1.087511, 2.096719, 0.810736, 1.094093, 2.476373, 1.600309, 0.062771, 0.157785, 1.499191, 1.400008}, {{-0.161471, 1.098238}, {0.190925, 0.957258}, {0.716957, 0.082335}, {-0.198512, 0.775226}, {0.428901, 0.057354}}, -134.96988979880843318, -134.80361250333160968, {1.4603266934200022189, 1.3652594403091386337, 1.0478558750201808409, 1.3125338713289979578, 0.84190141488658691581}, {1.24466605829693284, 1.2862573572348562461, 0.98508229068249930207, 1.2075838735823727102, 0.79750423773979613597}, {0.31525733985008549237, 0.10101251460384439254, 0.063935713760469945152, 0.13910783016495971337, 0.039449028735648280635}, -88.407825328374465918, {1.9983864854266512901, 1.5473622203262643061, -0.43919286926216351382, 0.28334024903152488522, -0.35893092954436486269}, {0.44212890573435194102, 0.11496690421725637716, 0.14134266065279268484, 0.48473345623905049583, 0.10803393777939385892}, {{{0.618817, 0.099206}, {0.76192, 0.938982}}, {{0.148873, 0.105437}, {0.819209, 0.326895}}, {{0.496909, 0.710289}, {0.779708, 0.373368}}, {{0.138702, 0.392283}, {0.5735, 0.687471}}, {{0.614403, 0.890087}, {0.482571, 0.937732}}}, {1, 1, 0, 2, 0}},
    {1.501, {0.419, 1.504}, 0.129, {{0.765389, 0.730871}, {0.878477, 0.91485}, {0.289724, 0.166733}, {0.534398, 0.483451}, {0.581855, 0.787466}, {0.358854, 0.84232}, {0.637726, 0.610439}, {0.010131, 0.646291}, {0.119903, 0.866754}, {0.003837, 0.83694}, {0.692017, 0.548775}, {0.68321, 0.936824}, {0.922073, 0.925675}, {0.99844, 0.615513}, {0.99354, 0.270183}, {0.296919, 0.164596}, {0.695292, 0.846985}, {0.048375, 0.854645}, {0.133672, 0.735551}, {0.47436, 0.732959}}, {2, 0, 2, 0, 1, 1, 2, 0, 1, 1, 2, 2, 2, 1, 2, 1, 0, 1, 1, 1}, {{{0.494146, 0.094467}, {0.587042, 0.579762}}, {{0.90857, 0.3502}, {0.720907, 0.304712}}, {{0.659668, 0.346693}, {0.523687, 0.540025}}, {{0.155505, 0.630045}, {0.463422, 0.554261}}, {{0.860677, 0.997453}, {0.444865, 0.385943}}, {{0.714188, 0.884352}, {0.134889, 0.296089}}, {{0.857879, 0.670433}, {0.155854, 0.522901}}, {{0.919381, 0.808344}, {0.959146, 0.692876}}, {{0.457524, 0.479471}, {0.738041, 0.020965}}, {{0.973952, 0.724693}, {0.768208, 0.254746}}, {{0.008011, 0.394832}, {0.87933, 0.298806}}, {{0.341861, 0.661872}, {0.443349, 0.641339}}, {{0.177173, 0.119667}, {0.847001, 0.25712}}, {{0.587032, 0.190544}, {0.325991, 0.064352}}, {{0.932602, 0.959941}, {0.317889, 0.88129}}, {{0.542248, 0.632814}, {0.25017, 0.800907}}, {{0.446457, 0.123801}, {0.509188, 0.835632}}, {{0.559309, 0.751979}, {0.912869, 0.924371}}, {{0.329878, 0.193089}, {0.400439, 0.19021}}, {{0.154645, 0.039314}, {0.12638, 0.529301}}}, {-0.506755, 1.41745, 0.649537, 1.191399, 2.218091, 1.501813, 0.636924, 0.077965, 1.566702, -0.1056, 0.4319, -0.512838, 1.071777, -0.41041, 1.085366, 0.132072, 0.124753, 1.519138, 1.009345, 0.788312}, {{0.491847, 0.415374}, {1.09157, 0.239277}, {1.049456, 0.596545}, {0.710197, 1.047623}, {-0.016372, -0.129572}}, -42.345742403629668586, -42.442801150545261896, {0.79004446372537312868, 0.71542218079100401172, 0.62969913817534323323, 0.61094262380215315388, -0.44059483358674733521}, {0.78874032059061974294, 0.64363796415707032845, 0.59367854345020436586, 0.58922267207242487775, -0.54649583025432450787}, {0.028987275292103765722, 0.12412671396448791449, 0.067811980363881777593, 0.038253889836128771195, 0.28750164674208337652}, -38.757710957953183621, {0.76051752339487481243, -0.086722095527553628699, -0.33449419434524656542, 0.5499474093957120023, 0.082242071370154355941}, {0.091333470994281296832, 0.33661063212986425127, 0.25656055423737805301, 0.13232646883774873144, 0.42043170640835060077}, {{{0.922242, 0.831275}, {0.036478, 0.322287}}, {{0.422718, 0.090395}, {0.104375, 0.726502}}, {{0.733254, 0.757541}, {0.656664, 0.537008}}, {{0.731508, 0.48872}, {0.359556, 0.422414}}, {{0.311313, 0.112829}, {0.668184, 0.509178}}}, {0, 1, 1, 2, 0}},
    {0.625, {0.536, 0.911}, 0.11, {{0.892636, 0.939667}, {0.998795, 0.34271}, {0.706812, 0.331736}, {0.814816, 0.482023}, {0.067917, 0.750493}, {0.872094, 0.401233}, {0.275596, 0.333733}, {0.163722, 0.02107}, {0.979016, 0.64947}, {0.507434, 0.420172}, {0.697318, 0.89993}, {0.169234, 0.122575}, {0.512799, 0.053564}, {0.360184, 0.036829}, {0.147986, 0.70326}, {0.734431, 0.041965}, {0.639846, 0.047905}, {0.091185, 0.474072}, {0.683891, 0.869112}, {0.722634, 0.11414}}, {1, 2, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 2, 0, 0, 1, 1, 2, 0, 1}, {{{0.34373, 0.998432}, {0.143768, 0.20212}}, {{0.01426, 0.999912}, {0.222129, 0.315765}}, {{0.476238, 0.468744}, {0.331934, 0.259518}}, {{0.861146, 0.697634}, {0.962232, 0.946446}}, {{0.122478, 0.647691}, {0.857808, 0.491422}}, {{0.670916, 0.15078}, {0.972729, 0.147971}}, {{0.128467, 0.506274}, {0.314104, 0.854943}}, {{0.131785, 0.430002}, {0.819887, 0.506951}}, {{0.57274, 0.937018}, {0.899203, 0.391531}}, {{0.639173, 0.332957}, {0.840342, 0.803165}}, {{0.987604, 0.842497}, {0.522956, 0.484528}}, {{0.976453, 0.091152}, {0.069727, 0.337142}}, {{0.080902, 0.848918}, {0.374004, 0.748488}}, {{0.943166, 0.082039}, {0.718282, 0.340412}}, {{0.50633, 0.784789}, {0.267355, 0.13689}}, {{0.698317, 0.056615}, {0.70111, 0.355107}}, {{0.146089, 0.916876}, {0.319689, 0.86962}}, {{0.780951, 0.233588}, {0.664852, 0.107909}}, {{0.27669, 0.558452}, {0.056575, 0.49827}}, {{0.948124, 0.573625}, {0.050538, 0.065481}}}, {0.645508, 1.817011, -0.14734, 1.055541, 0.568082, 0.965693, 1.3736, 1.299933, 1.122757, 1.18951, 0.325621, 1.98636, 0.499908, 0.962875, 0.509442, 3.301269, 1.225448, -0.502036, 1.144787, -0.368605}, {{0.675242, 0.264897}, {-0.029397, 0.040449}, {1.123136, 0.265382}, {-0.174532, 0.30215}, {0.448877, -0.079383}}, -57.348492423824073033, -59.577497731316525088, {0.99368446430364557396, 1.1826799869309523276, 1.5436213790085543435, 0.82716001869926984542, 1.2801084155131641428}, {1.0278263132492813647, 1.0386053952338322552, 1.390444204971516208, 0.62737051761326158195, 1.2265467857767977513}, {0.014325130339260149763, 0.087228164945917652106, 0.083668366117406196765, 0.14074331201134211995, 0.030980790407419447374}, -41.818625313269221664, {1.3740210038513653746, 1.4866887436247251807, 1.3092687446278146162, 0.80385246865165661712, 1.2050476576627332348}, {0.14753115782570570426, 0.20353120009692421243, 0.36172565105460156809, 0.230611688209368955, 0.093329391514968459485}, {{{0.645404, 0.025501}, {0.412378, 0.017924}}, {{0.155792, 0.577629}, {0.324371, 0.102027}}, {{0.006573, 0.17227}, {0.582348, 0.128113}}, {{0.661064, 0.592907}, {0.197705, 0.804179}}, {{0.291385, 0.277783}, {0.267938, 0.286738}}}, {2, 2, 0, 0, 0}},
    {1.883, {1.912, 1.305}, 0.156, {{0.442694, 0.234882}, {0.825595, 0.543233}, {0.978539, 0.157818}, {0.366642, 0.228831}, {0.513763, 0.823518}, {0.231378, 0.908825}, {0.508952, 0.49302}, {0.889092, 0.860625}, {0.081076, 0.56372}, {0.06439, 0.50169}, {0.12749, 0.177986}, {0.318445, 0.20924}, {0.788277, 0.040088}, {0.552908, 0.294443}, {0.007745, 0.767754}, {0.485745, 0.127899}, {0.446785, 0.630905}, {0.331662, 0.290252}, {0.605803, 0.586049}, {0.475793, 0.399952}}, {2, 0, 2, 0, 2, 1, 0, 2, 2, 1, 2, 2, 1, 1, 2, 1, 1, 2, 2, 1}, {{{0.163847, 0.802157}, {0.146083, 0.788036}}, {{0.087655, 0.246657}, {0.940681, 0.52085}}, {{0.335967, 0.186694}, {0.227813, 0.285703}}, {{0.856823, 0.764148}, {0.154294, 0.401643}}, {{0.962789, 0.502469}, {0.916913, 0.363778}}, {{0.979602, 0.888814}, {0.131837, 0.136632}}, {{0.913221, 0.001344}, {0.165555, 0.106573}}, {{0.28538, 0.538858}, {0.106598, 0.589688}}, {{0.013803, 0.230834}, {0.042897, 0.776332}}, {{0.429899, 0.880493}, {0.535159, 0.665506}}, {{0.73253, 0.909138}, {0.188706, 0.119857}}, {{0.312741, 0.641152}, {0.633285, 0.502233}}, {{0.106332, 0.997798}, {0.751347, 0.792183}}, {{0.414385, 0.199388}, {0.479822, 0.537244}}, {{0.914019, 0.494647}, {0.988028, 0.635344}}, {{0.061796, 0.443497}, {0.456613, 0.015461}}, {{0.523608, 0.100068}, {0.865065, 0.358725}}, {{0.357548, 0.083358}, {0.980784, 0.703469}}, {{0.340809, 0.91009}, {0.17938, 0.012051}}, {{0.998499, 0.389595}, {0.764336, 0.184308}}}, {-0.593193, 0.800168, 2.082647, 0.921311, 0.500584, 1.576619, 2.009886, 1.685034, 2.534645, 3.156582, 2.092616, 1.138012, 2.467668, -0.076476, -0.210229, 1.108151, 0.801437, 2.423063, -0.673555, 1.864352}, {{1.146205, 0.299236}, {0.402182, 1.141149}, {0.083686, 0.893845}, {0.932957, 1.105383}, {0.430932, 0.534478}}, -74.37562530052959516, -75.742372046978404578, {1.1721386786000335009, 0.88828542913729611942, 1.1604792977105900334, 0.74821183980630967267, 1.1856964058475150568}, {1.1267297805539327539, 0.78485765188740838378, 1.1109593055664667832, 0.62738703699930888983, 1.2116561328906891553}, {0.060564643039652771662, 0.084021128060319764587, 0.044943133777731088032, 0.10835823999668222175, 0.010662384444911624274}, -61.879449143713944147, {0.76558077773704139736, 1.20438834819043006, 1.4461253089980971486, 1.3479290381850858969, 1.1404068467037641681}, {0.11645840968120948353, 0.10625911229028062875, 0.095790310154587714914, 0.18173396965545022477, 0.047529385768350359445}, {{{0.574081, 0.543888}, {0.610167, 0.263448}}, {{0.762398, 0.953193}, {0.397977, 0.967442}}, {{0.017024, 0.893564}, {0.41504, 0.317501}}, {{0.186807, 0.494564}, {0.701908, 0.335897}}, {{0.602147, 0.733581}, {0.573057, 0.911068}}}, {0, 1, 2, 1, 0}},
    {2.719, {1.814, 1.765}, 0.225, {{0.494761, 0.806469}, {0.217571, 0.970614}, {0.785564, 0.909395}, {0.231311, 0.111252}, {0.520276, 0.069531}, {0.52686, 0.558562}, {0.686959, 0.338718}, {0.063335, 0.987565}, {0.619831, 0.273712}, {0.463573, 0.533607}, {0.606681, 0.809319}, {0.660323, 0.404725}, {0.060905, 0.763432}, {0.863635, 0.350459}, {0.030561, 0.37658}, {0.643534, 0.454008}, {0.182248, 0.463193}, {0.213396, 0.052379}, {0.302875, 0.949204}, {0.674512, 0.394215}}, {2, 1, 0, 2, 2, 1, 2, 2, 2, 2, 1, 1, 2, 2, 1, 0, 0, 2, 1, 2}, {{{0.787898, 0.743264}, {0.843293, 0.493224}}, {{0.68798, 0.421382}, {0.503373, 0.791719}}, {{0.028428, 0.145328}, {0.171841, 0.048152}}, {{0.966085, 0.300968}, {0.845745, 0.748023}}, {{0.169356, 0.158298}, {0.201788, 0.867074}}, {{0.597466, 0.69999}, {0.984705, 0.705401}}, {{0.352537, 0.309093}, {0.762575, 0.560317}}, {{0.570623, 0.422828}, {0.324929, 0.879134}}, {{0.06235, 0.481396}, {0.434824, 0.884814}}, {{0.24625, 0.47749}, {0.314446, 0.124494}}, {{0.848355, 0.125525}, {0.225199, 0.379687}}, {{0.777988, 0.224656}, {0.158381, 0.835811}}, {{0.134684, 0.280055}, {0.398915, 0.934011}}, {{0.920309, 0.912404}, {0.369837, 0.84898}}, {{0.289232, 0.969497}, {0.796315, 0.69711}}, {{0.622034, 0.50446}, {0.32749, 0.91836}}, {{0.360633, 0.452703}, {0.898627, 0.943791}}, {{0.110482, 0.857589}, {0.631562, 0.859383}}, {{0.245599, 0.894414}, {0.052574, 0.796717}}, {{0.136571, 0.860344}, {0.991634, 0.856857}}}, {1.077182, 0.953414, 4.397879, -0.599371, 1.564451, 1.456906, 1.143111, 2.380098, 1.702098, 3.62491, -0.00837, 1.730441, 1.101095, 1.205505, 0.840461, 0.803475, 0.533241, 1.212227, 1.317276, 1.677978}, {{0.849955, 0.19299}, {0.429391, 0.022333}, {0.144037, -0.156051}, {0.855795, 0.894736}, {0.574559, 0.645381}}, -51.715869533684534879, -52.332059392923360705, {1.5294313995080667149, 0.89519487163389783042, 0.47148416986387938158, 2.2513110476880824458, 1.6717026875514803487}, {1.4851079083502825895, 0.86433959677771479125, 0.38680549345117229312, 2.2052281445209128553, 1.6871837261971340612}, {0.049829121969607841601, 0.043853984336825866537, 0.097312580126761883719, 0.063941450006115436435, 0.017363655383195321601}, -45.9361450134753404, {1.9711178326990263263, 1.0197852077521795855, 0.46819177730313349487, 1.2893571238021568356, 1.7910846274514170557}, {0.15524245113615724172, 0.16870282433087561575, 0.14581577467961962355, 0.19221336866988364516, 0.04267343625561834286}, {{{0.795318, 0.344148}, {0.007729, 0.736522}}, {{0.307747, 0.581373}, {0.738652, 0.135357}}, {{0.585811, 0.785919}, {0.377858, 0.44962}}, {{0.341674, 0.01658}, {0.856938, 0.045976}}, {{0.244197, 0.057181}, {0.226023, 0.099795}}}, {0, 0, 1, 2, 1}},
};

}  // namespace oracle
