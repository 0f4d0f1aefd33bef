// 50x10 dataset shared with the out-of-band oracle run.
#[rustfmt::skip]
const ORACLE_X: [[f64; 10]; 50] = [
    [-0.8644899915857458, 0.3743703497375756, 0.3915456935025806, -0.6431216570009382, 0.48633519724170227, -0.569472270518497, 1.4267211566488358, 0.15684398370418373, 1.7177300496602352, -0.4581267928860093],
    [0.9935428899461082, 1.3122617634995941, -0.8300494780706381, -2.330398693879336, -0.1314100496126187, 0.8489166370272815, -0.3713121626087335, -0.6135235839564444, 0.48828225611598014, -2.7615174680703904],
    [0.01448894497627659, -1.7936487418003788, -0.19385631695423103, 1.4972941097795758, 1.091938802244823, 1.7143802468690919, -1.5562876468486921, 0.7587252005544856, 1.206282194115847, 0.9805569848379664],
    [1.690525703800356, -0.4659373705408328, 0.0328201636785844, 1.2075162829965078, -0.7889230286257386, 0.00206557290594813, -0.0008903858579313628, -1.7547243063454208, 1.0176580056634932, 0.6004985159195494],
    [0.32974984812772645, -0.1738235830168134, -1.588248456390394, -0.5420271649571422, 0.9327496931183914, -0.14826702394121333, -0.07045512525645098, 1.3929273169293201, -1.2497135702004163, -1.4975883184272776],
    [0.5487451197783295, 0.6766289895558858, -0.012242186606443108, 0.7243365385129338, -0.6736451873760739, -0.05586745005007389, 2.2599469866262614, 0.8690393292538257, -0.34211702342686306, -0.4719266521335214],
    [0.6382524596744971, 0.22168183857447232, -0.908625866473386, -1.9591870700638947, 0.5961405532482851, -0.0541901860225453, -1.6414329702386192, 1.1710009933340728, 0.7753290105104936, -0.24095421610563522],
    [-1.6833968436380886, 1.0150149354608902, -1.441543716638465, -0.5436285648904664, -0.36166831266496646, 0.7885045741169973, 0.3001139057307936, 0.8107682857875183, -0.4436438305470435, -0.17218328655595963],
    [-0.012994471457617379, 1.3930001299965031, 0.499502748490931, -1.5238846865956637, 0.604631283883467, 0.9360117002311108, -0.5684558547947647, -0.42579440249513056, -2.3051832736012074, 0.9034059889654352],
    [-0.6010826783164164, -0.9881852182648735, -0.10798767132937905, -1.5238657810517124, -0.6409755575397992, 0.6818598200916514, 1.9019281443998326, -2.823830566361389, -0.3104500066067672, 0.31205379190256133],
    [-0.06000144301868187, 0.7876853416130717, -1.4317041146192901, -0.36609055366061943, 0.13891007496547333, -1.6182690091954535, 1.3373200279375046, -0.7040771762567811, 0.6832287197221967, -0.4199349315902965],
    [1.6506996911864755, 0.15433553545635803, -0.3871399432863881, 2.8290722207611116, -0.04538602986064609, -1.4506786991465748, -0.4052278554276867, -2.2883151019717225, 1.0493965493432547, -0.41647431852001854],
    [0.6547057037031101, 0.8943523048205326, 0.4155026142980106, -0.12354465671321757, -0.19602731230796547, -0.5907698188631366, -0.29971123732782745, 1.296885192726673, 1.5295796333931557, 0.6694181934096611],
    [0.1593575124787956, 0.7877987916407334, -0.8850449385797408, -1.0871578991539623, -1.6072128318129555, 0.9728927879931377, 0.03841792093519608, 0.489822137131927, 1.542483150268954, 1.0795458454539222],
    [-0.2879838665207813, 0.2998083522698998, 1.0559482991645386, 1.365882488627406, -1.233523943727563, 0.18290070161476676, 0.022244738540560485, -0.42906859355599203, -0.6481052928923601, 1.7475772393486444],
    [-0.1669497367315875, -0.22980393269077168, -0.18536053915171957, -0.361495257244181, 0.060345847868502576, 0.9757826250950817, -0.4681581856513861, -0.9960159087143641, -0.01910639162006163, 0.6283680363037837],
    [0.5857848426842117, -1.5965578132681377, 0.12199862323379705, 0.979026231224436, -0.016829545305062484, -1.1897500046585723, -1.461179046618259, 1.170461525344169, -0.016948495512334197, 0.5397384919420447],
    [1.0716843607791755, 0.9041186180340225, -0.2301781449446131, 0.1949337094432062, -0.4310911560411398, -0.6430098315019632, -0.5687198945890353, -0.14085080288400628, -0.32341162364400444, 0.15434498642756528],
    [-0.13278753523879958, -1.8998613192823477, 1.2753617346658876, 0.8193613274992566, 0.7363779666484662, -1.1729165642801698, 1.2882035587583935, -0.5882628060623066, -0.10766707347332763, -1.401424669727377],
    [-0.6169219490904727, -0.3622822284197235, -0.520972335304312, 1.0097220569766006, -1.0779848942507055, -1.8324259667285763, 0.08815492459839569, -1.3365205499556942, -1.9519780985451252, 0.3733307838166882],
    [0.4921444591748181, -0.030508849941407817, 1.2820926250177223, -1.7511904580877307, -0.42026632180736134, 1.0263713308127662, 1.8377943921981248, 0.008425599966532707, 1.6795194076013296, -0.6025106149433088],
    [1.4976391155975834, -0.28263523607538044, 0.10864837149473018, 2.2382395207337566, 1.5033185204169108, -0.21273296701756084, 0.3319742154884982, 0.7350265843773598, -0.1928554603497804, -1.7780128529585086],
    [-0.12690914901069156, -0.5191373011482261, 0.9730931507802032, 0.8970195655562645, 0.3965645057428825, 1.1713934502105185, 1.1453159184696329, -0.34720418247402257, -0.5254297194729187, 0.28430893333213136],
    [0.1782902416059603, 1.7403462953928241, -0.21949450451100086, 0.5727473502436993, -1.0401310637851955, 0.02277796741918609, 0.6828289386721993, -0.7402956414063618, -0.049672262759627765, 0.7185567601798368],
    [-0.3688184684478463, -1.9063698785304681, -0.0996106318948645, 2.4995372967466807, -0.38342312293151254, -0.8898568610207493, -1.193591922258183, -1.0500168110753734, -0.30019373680016304, -1.1799820934582053],
    [-0.26026392267687554, 0.23145978839250378, -0.68700924339027, -2.148312460159927, 0.32251775665879234, -1.4390865712132557, 0.39072680328906206, -1.4412074688509382, -0.09920923029280436, -0.13564453855518557],
    [-0.5877543839497932, -2.1223494720326914, -1.7687717000796903, -1.0229501564455012, 0.7606599704311066, -0.08906461881002403, 0.47177775912678166, -1.1014996267250712, -1.34136562707248, 0.8857208066664711],
    [-0.7110531961235406, 0.49612542223907585, -0.5308537519246391, -0.32196238820557976, -1.2435175138560157, -0.5149272227037109, -0.27338280624577976, -0.8234600840161935, -0.2811079128134188, -1.5361022962124746],
    [-0.71713809637102, 0.9122629008524751, -0.10885368184599764, -0.27548816734075776, 0.47978534751115964, -0.8061509535362693, 0.5699733484544289, 0.34910847424222224, 0.31364856817711967, -0.39869328160449397],
    [-0.6254289739667597, -0.17154826119572117, 0.5052993741967516, 0.5386435848083531, -0.2427490786725466, -1.4532414124907906, 0.5545803118918878, 0.12388090528703843, 0.2744599237599636, -1.5265245318698402],
    [-0.4784178798045658, 0.3853865378946492, 0.30068041502290827, 2.019318883968629, 0.11655993973536867, -1.8538058715077061, -1.3698597189791943, 0.7311543854273908, -0.25831633323761105, 1.1379790600940631],
    [0.6266291978304716, 1.0053483801272336, -0.48617722506569383, -0.5705202394540222, -0.6547918670799658, -0.7866055231886101, 0.07949672056999453, 0.5234215590696311, -0.5632928587213418, -2.213669761648418],
    [-1.137136788165199, -0.3168654532226759, 0.5931281518098956, 0.5001719460248805, 0.4754595548146154, -0.5732742515495193, -0.5923915927897515, 0.039168649727583306, -0.19488150280829059, 0.592385242601458],
    [-0.8170802468288473, 0.19230769881891904, -0.09098126603276784, 1.754115207722065, -0.9402791142389414, -0.1312756500924986, 0.9610764636135062, 0.5607771722349455, -1.324641335581231, 0.6652036849577115],
    [1.2446417729678254, 0.8139214355639384, -1.7654406676583267, -0.4229416419397842, 1.4603717729212342, 0.06257636634668023, -0.5160425001420264, 0.30916085269295923, -0.5032419842210952, 0.6391131659040538],
    [0.8407332421435357, -0.17998640125235033, 0.5680618873279819, 0.047162803578535306, -1.708339203167056, -1.803098658479741, 0.38312185175751196, 2.2475950528076996, 0.269411630507887, -0.5246046194008523],
    [2.6385388020004976, 1.9821853304845491, -0.2035268000502686, -3.0914199790948054, -0.08311230588460812, 0.07250768363502956, -2.2992488779092026, 0.07383185757494175, -0.20015426282671603, -0.7857112844496886],
    [-0.9293238151062385, 0.4117968311159789, 1.8600556722271453, -0.6972736423565951, 0.4763377002572523, 1.1122904856590823, -0.6965910156586035, 0.5829703032859553, -1.0708925079948706, -0.8122085814317389],
    [-0.6150585442022168, 0.7646961050444676, 1.020969250803473, -1.2958619286141384, -1.4271747602971605, 0.7238732351994656, 1.1385566143318389, -0.16324839418482348, -1.2865170574421656, 0.2667609177130977],
    [1.7826292596410553, -1.0643833095839195, -1.41494581875732, -1.4461773057728151, -1.1237324264540718, -0.5897624660822641, 0.4208009787746427, 0.7719774290023502, 1.6595612759670786, -0.7366741715797671],
    [0.5456046200668676, 0.11829911768474807, -0.621789515797658, -0.6093269347209482, -1.179404683692706, 0.8200119188575723, 1.1823352268296694, -1.178504068822574, 0.42104696495269284, -0.9912622584059789],
    [0.9263017979429656, -0.04900229383858043, -0.3086042386373781, -1.7473476971833681, -3.082504765717661, -1.5180004939614387, -0.0695935067567302, -0.17526201629695312, 0.40355987305553453, -0.12668683820796836],
    [0.004733099553851422, -0.3451350852498921, -1.353467553907091, -1.7426723566426547, 0.7249819732044651, 1.0757624603064544, 0.09667458316429639, -0.8361723700478649, 0.09571096956650615, -0.24003977802267867],
    [-0.7425535252045677, 1.0724701315754954, -1.6510755894058389, 1.335429356326091, -2.0644148031211755, -0.6621593396668087, -1.2042198455997326, 1.461975627213524, 1.7661608779293339, -0.3294137519130651],
    [0.27343881793102437, -0.7490657359455261, 1.0824067597232148, -0.007397681529160538, -2.052635508275344, 2.063795551062848, -1.9107488776221957, 0.6364128589793191, 0.9388517689586727, 0.1470658631015921],
    [-0.42684409071304025, 0.7855519815381077, 2.1819595671986947, -1.6301271569502884, 0.534448207723997, -0.36625252824305515, 0.7848565993019057, 0.4383133073481328, 1.0601255494198738, -2.7947847617545816],
    [-0.3903864813615635, -0.8459226371278078, 0.6371128328124404, 0.9306229772622532, -0.07581386630591783, 0.7813018110504925, 0.48862541589268554, 0.3621900009510927, 0.9642004843914092, 0.2836364238347902],
    [-0.6647155734837235, -1.383796301504306, 0.2948137038455425, -1.5362492908042427, -1.1151676581210264, -0.35383117391136315, -1.4684084220955664, -0.013123743394290812, -0.6823723506305754, -0.37741903677609495],
    [-0.6540391445801527, -1.1966227860707963, 1.3462892764595866, -0.4903108824654809, -0.8640931041744787, -0.6144791634802568, 2.8610671907227583, -0.6100900460933781, -0.7620246675513062, 0.3043071699288759],
    [1.9120188623319405, 0.23730184663719345, 0.10143398521161544, 1.0525777355553176, -0.13237719756684715, -0.3094763405888804, -1.4349634660355541, 0.5016241231810408, -0.09477545043989416, 1.1930859223440107],
];
#[rustfmt::skip]
const ORACLE_Y: [f64; 50] = [1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0];
