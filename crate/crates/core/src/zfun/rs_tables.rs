//! Power series of the Riemann–Siegel correction functions `C₀…C₄` in
//! `w = p − 1/2`, ascending powers.

#![allow(clippy::excessive_precision)]

pub(super) const C0: [f64; 47] = [
    3.8268343236508977173e-1,
    0.0,
    1.7489618723100817974,
    0.0,
    2.1180252076854963732,
    0.0,
    -8.7072166705114807392e-1,
    0.0,
    -3.4733112243465167073,
    0.0,
    -1.6626947308999324496,
    0.0,
    1.2167312889192321345,
    0.0,
    1.3014304161007975773,
    0.0,
    3.0511021827361672421e-2,
    0.0,
    -3.7558030515450952428e-1,
    0.0,
    -1.0857844165640659744e-1,
    0.0,
    5.1832902999549623376e-2,
    0.0,
    2.999948061990227592e-2,
    0.0,
    -2.275939670612564226e-3,
    0.0,
    -4.3826474165803383059e-3,
    0.0,
    -4.0642301837298469931e-4,
    0.0,
    4.0060977854221139279e-4,
    0.0,
    8.9710579913888412978e-5,
    0.0,
    -2.3025650027239107116e-5,
    0.0,
    -9.3800066019067924847e-6,
    0.0,
    6.3235149476091075042e-7,
    0.0,
    6.5510228192315016662e-7,
    0.0,
    2.2105237455526972587e-8,
    0.0,
    -3.322316176445628835e-8,
];
pub(super) const C1: [f64; 48] = [
    0.0,
    -5.365020525675069406e-2,
    0.0,
    1.102781874108148244e-1,
    0.0,
    1.2317200154315226313,
    0.0,
    1.2634964862799457884,
    0.0,
    -1.6951089975595030184,
    0.0,
    -2.999871196765010089,
    0.0,
    -1.0819944959899208643e-1,
    0.0,
    1.9407662946212712688,
    0.0,
    7.8384235615006865329e-1,
    0.0,
    -5.0548296679003659188e-1,
    0.0,
    -3.8450723496057974051e-1,
    0.0,
    3.7472646465315320676e-2,
    0.0,
    9.0920266109731763173e-2,
    0.0,
    1.0449237550064509218e-2,
    0.0,
    -1.2582979651583416497e-2,
    0.0,
    -3.3995037211512740851e-3,
    0.0,
    1.0410950537714891268e-3,
    0.0,
    5.0109490511184868604e-4,
    0.0,
    -3.9563596690031815595e-5,
    0.0,
    -4.7624592453571896387e-5,
    0.0,
    -1.8539355338085132273e-6,
    0.0,
    3.193691808006897204e-6,
    0.0,
    4.0907807608506066327e-7,
    0.0,
    -1.5446624332576632128e-7,
];
pub(super) const C2: [f64; 51] = [
    5.1885428302931684938e-3,
    0.0,
    1.2378633552253898413e-3,
    0.0,
    -1.8137505725166997411e-1,
    0.0,
    1.4291492748532126541e-1,
    0.0,
    1.3303391766687565325,
    0.0,
    3.5224723534037336775e-1,
    0.0,
    -2.4210015958919507238,
    0.0,
    -1.6760787022538108853,
    0.0,
    1.3689416723328372184,
    0.0,
    1.5539019430222983221,
    0.0,
    -1.722164273472998052e-1,
    0.0,
    -6.359068055045430989e-1,
    0.0,
    -9.9116498730412081054e-2,
    0.0,
    1.4033480067387008951e-1,
    0.0,
    4.7823520198272922364e-2,
    0.0,
    -1.7356040641479780798e-2,
    0.0,
    -1.0225012534028591844e-2,
    0.0,
    9.2741491597948878994e-4,
    0.0,
    1.3572194372373385345e-3,
    0.0,
    6.41369012029388009e-5,
    0.0,
    -1.2300805698196629883e-4,
    0.0,
    -1.8313507404789202555e-5,
    0.0,
    7.8216286043226273085e-6,
    0.0,
    2.0087542484759945503e-6,
    0.0,
    -3.3532765393185713737e-7,
    0.0,
    -1.4616020917418230926e-7,
];
pub(super) const C3: [f64; 52] = [
    0.0,
    -2.6794321814389138085e-3,
    0.0,
    2.9953721091035149637e-2,
    0.0,
    -4.2570172541828697985e-2,
    0.0,
    -2.8997965779803887507e-1,
    0.0,
    4.8888319992354459725e-1,
    0.0,
    1.2308558763957460812,
    0.0,
    -8.2975607085274087042e-1,
    0.0,
    -2.2497635366665668665,
    0.0,
    7.8451399610054713794e-2,
    0.0,
    1.7467492800868894004,
    0.0,
    4.5968080979749935109e-1,
    0.0,
    -6.6193534710397749464e-1,
    0.0,
    -3.1590441036173634579e-1,
    0.0,
    1.2844792545207495989e-1,
    0.0,
    1.0073382716626152301e-1,
    0.0,
    -9.5301838488252677595e-3,
    0.0,
    -1.9264421687514088898e-2,
    0.0,
    -1.2464637158769291712e-3,
    0.0,
    2.424396964110308574e-3,
    0.0,
    4.3764769774185701828e-4,
    0.0,
    -2.0714032687001791276e-4,
    0.0,
    -6.2743445041865155605e-5,
    0.0,
    1.1575343814595669348e-5,
    0.0,
    5.8838549245403797839e-6,
    0.0,
    -3.1246774006963362209e-7,
    0.0,
    -4.024065775498959501e-7,
];
pub(super) const C4: [f64; 53] = [
    4.6483389361763381854e-4,
    0.0,
    -4.0226429461361883039e-3,
    0.0,
    3.8471770517961268836e-3,
    0.0,
    6.5811751358094860021e-2,
    0.0,
    -1.9604124343694449118e-1,
    0.0,
    -2.0854053686358853244e-1,
    0.0,
    9.5077541851417509458e-1,
    0.0,
    5.3415353129148739761e-1,
    0.0,
    -1.6763494411763400796,
    0.0,
    -1.0767471578751289928,
    0.0,
    1.2353393016565969853,
    0.0,
    1.0257825340057275772,
    0.0,
    -4.0124095793988544379e-1,
    0.0,
    -5.036663995108303448e-1,
    0.0,
    3.5734877955027449858e-2,
    0.0,
    1.4431763086785416624e-1,
    0.0,
    1.5091527417903469417e-2,
    0.0,
    -2.6098874779194361318e-2,
    0.0,
    -6.126628379519261749e-3,
    0.0,
    3.0775031298708411848e-3,
    0.0,
    1.1562478934088752316e-3,
    0.0,
    -2.2775966758472127473e-4,
    0.0,
    -1.4189637118181444433e-4,
    0.0,
    7.4648603079559194531e-6,
    0.0,
    1.2479701645409116617e-5,
    0.0,
    4.8639451840020946191e-7,
    0.0,
    -8.2102374141231672339e-7,
];
