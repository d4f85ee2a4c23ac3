//! Reference values computed at 40 digits with an arbitrary-precision library.

// (x, e^x K0, e^x K1, e^x K2, e^-x I0, e^-x I1)
pub const MODIFIED: &[(f64, f64, f64, f64, f64, f64)] = &[
    (1e-08, 1.85366124449769032e+01, 1.00000000999999911e+08, 2.00000002000000000e+16, 9.99999990000000061e-01, 4.99999995000000009e-09),
    (0.0001, 9.32720458727453305e+00, 1.00009995586389377e+04, 2.00020000499983311e+08, 9.99900007499583299e-01, 4.99950003124854212e-05),
    (0.01, 4.76869402854446189e+00, 1.00978648458240045e+02, 2.02004983856765539e+04, 9.90074585149707476e-01, 4.95031104711827607e-03),
    (0.05, 3.27390422253454183e+00, 2.09304651570600804e+01, 8.40492510504937627e+02, 9.51824035790976630e-01, 2.37881678665495706e-02),
    (0.1, 2.68232610226289436e+00, 1.08901826830496962e+01, 2.20485979763256807e+02, 9.07100925782301060e-01, 4.52984468088093242e-02),
    (0.5, 1.52410938577390942e+00, 2.73100970821178590e+00, 1.24481482186210517e+01, 6.45035270449150100e-01, 1.56420803184871698e-01),
    (1.0, 1.14446307980689510e+00, 1.63615348626325829e+00, 4.41677005233341191e+00, 4.65759607593640435e-01, 2.07910415349708444e-01),
    (1.5, 9.58210053294896502e-01, 1.24316587355255304e+00, 2.61576455136496699e+00, 3.67433609054158339e-01, 2.19039387420925685e-01),
    (1.999, 8.41760190189183355e-01, 1.03380182086002792e+00, 1.87607917053938622e+00, 3.08601601024804606e-01, 2.15283675938678365e-01),
    (2.0, 8.41568215070771397e-01, 1.03347684706868859e+00, 1.87504506213946009e+00, 3.08508322553671055e-01, 2.15269289248937651e-01),
    (2.001, 8.41376372873540279e-01, 1.03315216114036379e+00, 1.87401221609229474e+00, 3.08415122925971230e-01, 2.15254884730895824e-01),
    (3.0, 6.97761598043851738e-01, 8.06563480128786869e-01, 1.23547058479637628e+00, 2.43000354161825388e-01, 1.96826713297300865e-01),
    (5.0, 5.47807564313518958e-01, 6.00273858788312631e-01, 7.87917107828844054e-01, 1.83540812609328363e-01, 1.63972266944542366e-01),
    (10.0, 3.91631934436598661e-01, 4.10766570595788749e-01, 4.73785248555756433e-01, 1.27833337163428595e-01, 1.21262681384455520e-01),
    (20.0, 2.78544876657182250e-01, 2.85425496940726442e-01, 3.07087426351254855e-01, 8.97803118848260195e-02, 8.75062221832886705e-02),
    (29.9, 2.28264348959031582e-01, 2.32050577954944104e-01, 2.43786126748659931e-01, 7.32692190460019072e-02, 7.20333749118687861e-02),
    (30.0, 2.27886665616253731e-01, 2.31654129377711793e-01, 2.43330274241434524e-01, 7.31459464822372951e-02, 7.19163305986475487e-02),
    (30.1, 2.27510851056279079e-01, 2.31259704097996122e-01, 2.42876944351826995e-01, 7.30232941310609424e-02, 7.17998543510143389e-02),
    (50.0, 1.76807155857429343e-01, 1.78566558558815563e-01, 1.83949818199781956e-01, 5.65616266474541912e-02, 5.59931238928954023e-02),
    (100.0, 1.25175621659126574e-01, 1.25799950479578537e-01, 1.27691620668718142e-01, 3.99443792990966801e-02, 3.97441530251302494e-02),
    (300.0, 7.23300317396072950e-02, 7.24504816672584123e-02, 7.28130349507223606e-02, 2.30425584150854602e-02, 2.30041220402689497e-02),
    (700.0, 4.73623694546135704e-02, 4.73961876534945425e-02, 4.74977871336235563e-02, 1.50812956515313581e-02, 1.50705194447168477e-02),
];
// (x, J0, J1, Y0, Y1)
pub const ORDINARY: &[(f64, f64, f64, f64, f64)] = &[
    (1e-06, 9.99999999999749978e-01, 4.99999999999937509e-07, -8.86903148165944444e+00, -6.36619772372175008e+05),
    (0.1, 9.97501562066040015e-01, 4.99375260362419984e-02, -1.53423865135036674e+00, -6.45895109470202655e+00),
    (0.7, 8.81200888607405308e-01, 3.28995741540058950e-01, -1.90664929337395123e-01, -1.10324987190763335e+00),
    (1.0, 7.65197686557966605e-01, 4.40050585744933498e-01, 8.82569642156769557e-02, -7.81212821300288685e-01),
    (1.9, 2.81818559374385547e-01, 5.81157072713434086e-01, 4.96819971283820216e-01, -1.64405772331595312e-01),
    (1.999, 2.24467536118083205e-01, 5.76789079213025802e-01, 5.10268358238654463e-01, -1.07596424239456631e-01),
    (2.001, 2.23314086636005521e-01, 5.76660135992954292e-01, 5.10482423168960198e-01, -1.06468640514066973e-01),
    (2.1, 1.66606980331990284e-01, 5.68292135757038630e-01, 5.18293737513760733e-01, -5.16786121304235319e-02),
    (3.3, -3.44296260398884613e-01, 2.20663452985241149e-01, 2.69091995054533850e-01, 3.87852931023709879e-01),
    (5.0, -1.77596771314338292e-01, -3.27579137591465230e-01, -3.08517625249033756e-01, 1.47863143391226831e-01),
    (7.7, 2.34559139586464377e-01, 1.81312715324588009e-01, 1.65801632423896506e-01, -2.24318474343008140e-01),
    (10.0, -2.45935764451348349e-01, 4.34727461688614383e-02, 5.56711672835993945e-02, 2.49015424206953884e-01),
    (17.5, -1.03110398228685923e-01, -1.63419969425754902e-01, -1.60411192505011180e-01, 9.85727987342160522e-02),
    (24.9, 8.32459683530154954e-02, -1.34855699531408857e-01, -1.36499183996765222e-01, -8.60025575955542521e-02),
    (25.1, 1.08275671499949447e-01, -1.14634784134422574e-01, -1.16767707638036941e-01, -1.10622233227830991e-01),
    (33.3, 6.33384859475212558e-02, 1.23862147901480091e-01, 1.22897499135037322e-01, -6.15007228077857349e-02),
    (50.0, 5.58123276692518155e-02, -9.75118281251751429e-02, -9.80649954700770765e-02, -5.67956685620147686e-02),
    (100.0, 1.99858503042231218e-02, -7.71453520141121563e-02, -7.72443133650831532e-02, -2.03723120027597925e-02),
    (1000.0, 2.47866861524201759e-02, 4.72831190708952395e-03, 4.71591797762281346e-03, -2.47843312923517779e-02),
    (10000.0, -7.09616035338880152e-03, 3.64745075552958030e-03, 3.64780555898660576e-03, 7.09634275253649520e-03),
];
