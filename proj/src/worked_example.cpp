#include "mmo/worked_example.hpp"

namespace mmo {

namespace {

const char* kP = "322503631145131659181549502994177879533";
const char* kQ = "322503631145131659181549502996361408083";

const char* kF[] = {
    "192299855391930388766069561100536978455",
    "80324299466086676640269450973128212279",
    "134802655995538131612821059755185358806",
    "223036273860653058471857675170774765711",
    "81615146624468266057406642183853219751",
    "282812473825451509017913772106035640705",
    "278906905917307720980382059680001096297",
};

const char* kG[] = {
    "81564018199971421800339434244552477506",
    "12324696623153181384549093381069011068",
    "80030936209387920933656861269029654371",
    "315635911037272927490950126509525457405",
    "217950416300798270685940703747161570332",
    "75454198535432609870859677101539890163",
    "26892964982895845277700750286746366172",
};

struct Row {
    const char* x;
    const char* h;
};

const Row kTable[] = {
    {"34915", "357083778061836956769804023406098677550"},
    {"30844", "501434122478371565756095361502998185705"},
    {"55453", "362669734592545590446623074678041228580"},
    {"43386", "453528102619044436291771088280150310990"},
    {"61725", "409617140945520234057946967178875528708"},
    {"39144", "426802401636630448727954157743588116409"},
    {"14608", "311556461063783252602939114845129657070"},
    {"24287", "594980681560119885662989234834546277705"},
    {"24582", "119430230752341918846040173886171897211"},
    {"36432", "20159634491993343981036574887019110187"},
};

const char* kFTilde[] = {
    "136931826884319377850275846232659046764",
    "127274522470810992144873423947517028220",
    "166540029496138250784732903087691991725",
    "149982375974823828230059543913714128152",
    "157228597180650695773338976918720767558",
    "159036774649843108350794952315211705687",
    "151078581747150708184414679388065540292",
};

const char* kGTilde[] = {
    "136932046707582432716133148636421185297",
    "126626289190994695470719871904637347436",
    "155794773090498354822261518935095270543",
    "169208171060443111900860401561223641003",
    "146816182843853780680863223220064874839",
    "149958509619423673718575100602091084672",
    "150242072053814918362813276371264593533",
};

Poly make_poly(const char* const (&coeffs)[7]) {
    IntVec v;
    v.reserve(7);
    for (const char* c : coeffs) v.emplace_back(c, 10);
    return Poly(std::move(v));
}

}  // namespace

const MmoInstance& worked_example_instance() {
    static const MmoInstance inst = [] {
        MmoInstance i;
        i.p = BigInt(kP, 10);
        i.q = BigInt(kQ, 10);
        i.f = make_poly(kF);
        i.g = make_poly(kG);
        i.affine = true;
        return i;
    }();
    return inst;
}

const ObservationSet& worked_example_observations() {
    static const ObservationSet obs = [] {
        const MmoInstance& inst = worked_example_instance();
        ObservationSet o;
        o.p = inst.p;
        o.q = inst.q;
        o.alpha = 6;
        o.affine = true;
        for (const Row& r : kTable) o.points.push_back({BigInt(r.x, 10), BigInt(r.h, 10)});
        return o;
    }();
    return obs;
}

std::pair<Poly, Poly> worked_example_reported_reconstruction() {
    return {make_poly(kFTilde), make_poly(kGTilde)};
}

}  // namespace mmo
