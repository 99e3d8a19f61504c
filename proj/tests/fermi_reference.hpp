#pragma once

// Reference values from tests/oracles/fermi_mpmath.py (mpmath, 40 digits).

namespace oracle {

struct FermiValue {
  double alpha, z, value;
};

struct FermiSlope {
  double alpha, z, first, second;
};

struct FdPressure {
  int d;
  double mu, z, x, P, dP;
};

inline constexpr FermiValue kFermiValues[] = {
    {-0.5, -20, 3.6532996700745534109e-9},
    {-0.5, -5, 0.011886110954227804531},
    {-0.5, -1, 0.52115038310799123958},
    {-0.5, 0, 1.0721549299401913395},
    {-0.5, 0.5, 1.4316924543353119938},
    {-0.5, 1, 1.820411357146962643},
    {-0.5, 3, 3.2852167828877116846},
    {-0.5, 5, 4.3832564347115706198},
    {-0.5, 10, 6.2971372445338478442},
    {-0.5, 20, 8.934972666166970245},
    {-0.5, 35, 11.828173306266189849},
    {-0.5, 45, 13.413677426392377186},
    {-0.5, 60, 15.490161585182171162},
    {-0.5, 100, 19.999177177245056598},
    {-0.5, 200, 28.283980430050708419},
    {0, -20, 2.0611536203143807032e-9},
    {0, -5, 0.0067153484891180686164},
    {0, -1, 0.31326168751822283405},
    {0, 0, 0.69314718055994530942},
    {0, 0.5, 0.97407698418010668087},
    {0, 1, 1.313261687518222834},
    {0, 3, 3.0485873515737420588},
    {0, 5, 5.0067153484891180686},
    {0, 10, 10.000045398899216865},
    {0, 20, 20.00000000206115362},
    {0, 35, 35.000000000000000631},
    {0, 45, 45.0},
    {0, 60, 60.0},
    {0, 100, 100.0},
    {0, 200, 200.0},
    {0.5, -20, 1.8266498363684073146e-9},
    {0.5, -5, 0.0059571769051784765966},
    {0.5, -1, 0.29050089616991755344},
    {0.5, 0, 0.67809389515310100731},
    {0.5, 0.5, 0.99020924871279989414},
    {0.5, 1, 1.3963752806665641263},
    {0.5, 3, 3.9769853540479774179},
    {0.5, 5, 7.837976057293096609},
    {0.5, 10, 21.344471492355182949},
    {0.5, 20, 59.812795370358026513},
    {0.5, 35, 138.1809826590245177},
    {0.5, 45, 201.36877664663484206},
    {0.5, 60, 309.94487327004378865},
    {0.5, 100, 666.74892047923923901},
    {0.5, 200, 1885.6762416216764063},
    {1, -20, 2.0611536213764692651e-9},
    {1, -5, 0.0067266308775223981229},
    {1, -1, 0.33864799640345217982},
    {1, 0, 0.82246703342411321824},
    {1, 0.5, 1.2367167868533451853},
    {1, 1, 1.8062860704447742567},
    {1, 3, 6.0957533465094022098},
    {1, 5, 14.138207435970704038},
    {1, 10, 51.64488866743374196},
    {1, 20, 201.64493406478707282},
    {1, 35, 614.14493406684822581},
    {1, 45, 1014.1449340668482264},
    {1, 60, 1801.6449340668482264},
    {1, 100, 5001.6449340668482264},
    {1, 200, 20001.644934066848226},
    {1.5, -20, 2.7399747555509589295e-9},
    {1.5, -5, 0.0089463822604122467435},
    {1.5, -1, 0.46084880629010165855},
    {1.5, 0, 1.1528038370883614033},
    {1.5, 0.5, 1.7727936118421095551},
    {1.5, 1, 2.6616826247320042268},
    {1.5, 3, 10.353714864761451977},
    {1.5, 5, 27.80244621574838045},
    {1.5, 10, 134.27015996313986513},
    {1.5, 20, 726.5682839651752334},
    {1.5, 35, 2913.4729941728724027},
    {1.5, 45, 5450.1946575956206884},
    {1.5, 60, 11173.30291388514594},
    {1.5, 100, 40024.673300450472137},
    {1.5, 200, 226309.06404954889151},
    {2, -20, 4.1223072438150270928e-9},
    {2, -5, 0.013464566610971754878},
    {2, -1, 0.70512975859561551804},
    {2, 0, 1.8030853547393914281},
    {2, 0.5, 2.8209692224994485715},
    {2, 1, 4.3283312256254017243},
    {2, 3, 18.968567803998950882},
    {2, 5, 58.129471901759902786},
    {2, 10, 366.23210546964210556},
    {2, 20, 2732.4640293447180314},
    {2, 35, 14406.812051346042518},
    {2, 45, 30523.044066016340379},
    {2, 60, 72197.392088021787172},
    {2, 100, 333662.32014670297862},
    {2, 200, 2667324.6402934059572},
};

inline constexpr FermiSlope kFermiSlopes[] = {
    {-0.5, -3, 0.082390205386503368589, 0.076873823425566008122},
    {-0.5, 0, 0.67371823885775398269, 0.21035636633620048579},
    {-0.5, 2, 0.74115397719419041214, -0.094099220632678810934},
    {-0.5, 8, 0.36198226144562279369, -0.025123033096092613446},
    {-0.5, 30, 0.1828273412965061814, -0.0030641978621529130136},
    {0.5, -3, 0.042629850616634431098, 0.041195102693251684294},
    {0.5, 0, 0.53607746497009566977, 0.33685911942887699135},
    {0.5, 2, 1.2976972916442392203, 0.37057698859709520607},
    {0.5, 8, 2.8085636893256090843, 0.18099113072281139684},
    {0.5, 30, 5.4747106522033052917, 0.091413670648253090699},
    {1.5, -3, 0.065049551325623347262, 0.063944775924951646647},
    {1.5, 0, 1.017140842729651511, 0.80411619745514350465},
    {1.5, 2, 3.7536867390107105003, 1.9465459374663588305},
    {1.5, 8, 23.070729183740142244, 4.2128455339884136265},
    {1.5, 30, 164.54222750589974802, 8.2120659783049579375},
};

inline constexpr FdPressure kFdPressure[] = {
    {2, 1.0, 1e-6, -13.122362377404162128, 1.0000005000001111111e-6, 1.0000010000003333333},
    {2, 1.0, 1e-2, -3.9020063388170345948, 0.01005011111066666969, 1.0100333331111132275},
    {2, 1.0, 1, 1.854586542131140943, 1.6069472846098100721, 2.3130352854993313036},
    {2, 1.0, 10, 19.999999997938846375, 100.82246701178200016, 20.000000041223072534},
    {2, 1.0, 1e3, 2000.0, 1000000.8224670334241, 2000.0},
    {2, 1.0, 1e6, 2000000.0, 1000000000000.822467, 2000000.0},
    {3, 1.0, 1e-6, -13.00158034188454798, 1.0000003989422635944e-6, 1.0000007978845103817},
    {3, 1.0, 1e-2, -3.783264441540534037, 0.010039877433755437241, 1.0079738085998939647},
    {3, 1.0, 1, 1.588199873459205341, 1.3833273260862744156, 1.7521495475943655524},
    {3, 1.0, 10, 9.5682051019088159382, 40.294181205720901784, 6.4966327749438370957},
    {3, 1.0, 1e3, 208.00442816079130916, 83211.260669632051435, 138.67489114684299933},
    {3, 1.0, 1e6, 20800.838190978950158, 8320335371.2877978907, 13867.225513372754935},
    {4, 1.0, 1e-6, -13.122362877404398239, 1.0000002499999537037e-6, 1.0000004999998611112},
    {4, 1.0, 1e-2, -3.9070299222533643611, 0.010024953910768986432, 1.0049861938113229708},
    {4, 1.0, 1, 1.1418364747227828573, 1.2169618141189114813, 1.4095561222777896743},
    {4, 1.0, 10, 6.0592739938910475028, 23.523474222773294269, 3.2994548794100535227},
    {4, 1.0, 1e3, 63.219539162084245196, 21107.843711914134383, 31.635788974550052048},
    {4, 1.0, 1e6, 1999.9991775327974628, 666667489.13319275165, 1000.0004112337703817},
    {3, 2.5, 0.1, -2.373071252343205471, 0.10159308815380118157, 1.0318350347924827264},
    {3, 2.5, 5, 3.0139920635899098792, 8.6978546837787807052, 2.4285676845991827132},
};

} // namespace oracle
