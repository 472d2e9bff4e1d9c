#!/usr/bin/env python3
"""Regenerate src/capstream/data/pos_lexicon.txt.

The lexicon is a flat "word POS" table (POS in {N, A, V}) built from curated
base lists plus generated inflections: noun plurals, verb -s/-ing/-ed forms
(with irregulars), so the runtime tagger can stay a plain dictionary lookup
with suffix rules as fallback. Run from the repo root:

    python tools/build_pos_lexicon.py
"""
from pathlib import Path

NOUNS = """
person man woman boy girl child kid baby guy lady gentleman people crowd
player rider skier surfer snowboarder skateboarder batter pitcher catcher
goalie chef cook waiter waitress worker officer policeman firefighter driver
passenger pedestrian cyclist motorcyclist pilot sailor farmer vendor customer
shopper tourist photographer artist musician dancer singer student teacher
doctor nurse family couple friend group team crowd audience spectator
bird cat dog horse sheep cow elephant bear zebra giraffe puppy kitten duck
goose swan pigeon seagull gull parrot eagle hawk owl chicken rooster hen
turkey monkey ape gorilla lion tiger leopard cheetah deer moose goat pig
boar rabbit bunny fox wolf squirrel chipmunk mouse rat hamster fish shark
whale dolphin seal otter turtle frog lizard snake butterfly bee bug insect
spider animal pet herd flock pack litter
bicycle bike car motorcycle motorbike airplane plane jet aircraft bus train
truck boat ship ferry sailboat canoe kayak raft yacht vehicle van taxi cab
scooter moped tractor trailer wagon cart carriage helicopter subway tram
trolley locomotive engine ambulance firetruck
hydrant sign signal meter bench street road sidewalk pavement highway
freeway intersection crosswalk curb bridge tunnel building house home tower
church cathedral castle station terminal airport runway tarmac track rail
platform city town village neighborhood park playground field meadow pasture
farm barn stable forest wood tree branch trunk leaf bush shrub grass lawn
flower blossom garden yard fence gate wall hill mountain peak cliff valley
canyon rock stone boulder pebble beach shore coast sand dune ocean sea lake
river stream creek pond puddle water wave surf tide sky cloud sun sunset
sunrise moon star horizon snow ice rain fog mist wind storm lightning rainbow
frisbee ski skis snowboard ball kite bat glove mitt skateboard surfboard
racket racquet net court goal game match stadium arena gym slope ramp rink
pool course swing slide seesaw
bottle glass cup mug fork knife spoon bowl plate dish platter saucer banana
apple sandwich burger hamburger cheeseburger orange broccoli carrot hotdog
pizza donut doughnut cake bread loaf toast bagel bun roll croissant cheese
meat chicken beef pork bacon ham sausage steak salad soup stew rice pasta
noodle spaghetti egg omelet fruit vegetable tomato potato fry onion pepper
mushroom lettuce spinach cucumber celery corn pea bean berry strawberry
blueberry raspberry grape lemon lime melon watermelon pineapple mango peach
pear plum cherry kiwi avocado pie tart cookie brownie dessert pastry muffin
cupcake pancake waffle cereal sauce gravy ketchup mustard syrup honey jam
butter cream sugar salt spice herb drink beverage coffee tea juice milk
smoothie wine beer soda cocktail food meal breakfast lunch dinner brunch
snack feast buffet
chair couch sofa armchair stool plant bed mattress pillow cushion blanket
quilt sheet desk table nightstand dresser wardrobe closet toilet bathroom
bathtub tub shower kitchen bedroom room hallway doorway door window sill
curtain drape blind shelf bookshelf cabinet counter countertop drawer mirror
lamp chandelier ceiling floor carpet rug mat stair staircase banister
fireplace mantel
tv television laptop computer keyboard mouse remote phone cellphone
smartphone telephone screen monitor display camera lens tripod microwave
oven stove burner toaster blender mixer kettle pot pan skillet sink faucet
refrigerator fridge freezer dishwasher washer dryer machine appliance clock
watch speaker radio headphone charger cable cord outlet switch light bulb
lantern
book magazine newspaper vase scissors teddy toy doll kite puzzle umbrella
parasol handbag bag backpack purse wallet suitcase luggage briefcase tie
bowtie suit shirt blouse jacket coat sweater hoodie vest dress gown skirt
hat cap helmet visor shoe boot sneaker sandal slipper sock jeans pants
trousers shorts scarf mitten belt buckle glasses sunglasses goggles jewelry
necklace bracelet ring earring box crate basket bucket container jar can tin
tray napkin towel tissue paper card poster picture photo photograph painting
portrait mural frame statue sculpture figurine candle flag banner balloon
ribbon bow rope chain wire pole post pipe ladder broom mop brush comb razor
toothbrush toothpaste soap shampoo lotion perfume makeup lipstick
image scene view background foreground area side top bottom front back
middle center edge corner row line pair bunch pile stack heap slice piece
half portion chunk crumb tip end part surface pattern stripe spot dot patch
shadow reflection silhouette outline shape circle square triangle rectangle
oval diamond ring cross bar star grid arrow number letter word text label
logo symbol mark zoo aquarium museum library school office shop store market
bakery cafe restaurant diner bar pub hotel motel hospital
""".split()

ADJECTIVES = """
red orange yellow green blue purple pink brown black white gray grey golden
silver tan beige maroon navy teal cyan turquoise violet lavender crimson
scarlet colorful multicolored bright dark pale vivid neon pastel
big large small little tiny huge giant enormous massive tall short long wide
narrow thick thin deep shallow high low miniature oversized
old young new vintage antique modern ancient elderly adult teenage
clean dirty wet dry empty full open closed shut broken cracked chipped worn
torn rusty dusty muddy messy neat tidy polished shiny glossy dull matte
fluffy furry hairy feathered scaly smooth rough soft hard firm fuzzy silky
striped spotted dotted checkered plaid floral patterned plain fancy ornate
elegant festive decorated frosted glazed sprinkled stuffed grilled roasted
toasted baked fried steamed boiled scrambled fresh ripe raw cooked delicious
tasty sweet sour bitter salty spicy juicy crispy crunchy creamy
beautiful pretty cute adorable lovely handsome gorgeous nice happy sad angry
surprised scared tired sleepy hungry playful curious friendly gentle fierce
wild tame calm busy quiet loud noisy crowded deserted rural urban suburban
grassy sandy rocky snowy icy foggy misty sunny cloudy rainy windy stormy
overcast hazy lush barren
wooden metallic plastic rubber leathery woolen cotton denim ceramic
porcelain marble brick concrete stained
round circular oval square rectangular triangular curved straight flat
steep sloped crooked diagonal vertical horizontal upside inverted parallel
two three four five six seven eight nine ten eleven twelve dozen single
double triple multiple numerous lone solitary
left right upper lower nearby distant far close outdoor indoor outside
inside
""".split()

# Base verbs; -s/-ing/-ed forms are generated, irregular forms listed below.
VERBS = """
ride stand sit walk stroll run jog sprint jump leap hop skip fly soar glide
hover float drift sail row paddle swim dive surf ski skate snowboard
skateboard climb descend hike trek race chase flee hold grip grasp carry
lift raise lower drop toss throw pitch catch hit strike kick swing bat serve
bounce dribble shoot score aim drive steer park brake accelerate travel
move cross pass overtake approach arrive depart leave enter exit board
disembark load unload wait pause rest lean recline lie lay sleep nap doze
wake stretch bend crouch kneel squat balance pose stare gaze look watch
observe view glance peek point gesture wave salute reach grab pull push
drag shove tug eat munch chew bite nibble devour feast drink sip gulp lick
taste feed graze nurse cook bake grill roast fry boil steam stir whisk mix
blend chop slice dice peel spread pour spill splash drip squeeze serve
plate garnish decorate frost ice top fill empty wash rinse scrub wipe dry
clean polish sweep mop dust vacuum tidy arrange organize stack pile place
put set position hang mount attach fasten tie untie wrap unwrap open close
lock unlock play perform dance sing hum whistle clap cheer celebrate talk
speak chat converse discuss argue shout yell whisper laugh smile grin frown
cry weep read write draw paint sketch color photograph film record type
browse scroll click text call phone work study learn teach train practice
exercise compete win lose try attempt prepare make build construct assemble
repair fix mend adjust measure cut trim shave brush comb groom dress wear
don remove shop buy sell pay trade examine inspect check search seek find
discover explore wander roam visit tour greet meet gather assemble huddle
share give take receive offer present show display exhibit demonstrate
hide cover uncover reveal shelter shield protect guard herd shepherd perch
roost nest burrow prowl stalk pounce pet stroke cuddle hug embrace kiss
shake nod bow curtsy crawl creep slither waddle trot gallop canter prance
buck rear graze bark meow purr chirp tweet sing howl roar growl hiss bleat
moo neigh oink quack splash wade paddle dip soak dunk submerge surface
emerge land launch lift ascend plummet plunge tumble fall slip trip stumble
roll spin twirl rotate turn twist flip somersault cartwheel face overlook
border surround encircle line frame fill occupy contain include feature
involve depict portray represent resemble match complement contrast stand
""".split()

# (base, 3sg, gerund, past) overrides for irregular or doubled forms.
IRREGULAR_VERBS = [
    ("ride", "rides", "riding", "rode"),
    ("stand", "stands", "standing", "stood"),
    ("sit", "sits", "sitting", "sat"),
    ("run", "runs", "running", "ran"),
    ("jog", "jogs", "jogging", "jogged"),
    ("hop", "hops", "hopping", "hopped"),
    ("skip", "skips", "skipping", "skipped"),
    ("fly", "flies", "flying", "flew"),
    ("swim", "swims", "swimming", "swam"),
    ("dive", "dives", "diving", "dove"),
    ("hold", "holds", "holding", "held"),
    ("grip", "grips", "gripping", "gripped"),
    ("carry", "carries", "carrying", "carried"),
    ("drop", "drops", "dropping", "dropped"),
    ("hit", "hits", "hitting", "hit"),
    ("swing", "swings", "swinging", "swung"),
    ("drive", "drives", "driving", "drove"),
    ("leave", "leaves", "leaving", "left"),
    ("lie", "lies", "lying", "lay"),
    ("lay", "lays", "laying", "laid"),
    ("sleep", "sleeps", "sleeping", "slept"),
    ("wake", "wakes", "waking", "woke"),
    ("kneel", "kneels", "kneeling", "knelt"),
    ("eat", "eats", "eating", "ate"),
    ("bite", "bites", "biting", "bit"),
    ("drink", "drinks", "drinking", "drank"),
    ("feed", "feeds", "feeding", "fed"),
    ("stir", "stirs", "stirring", "stirred"),
    ("chop", "chops", "chopping", "chopped"),
    ("put", "puts", "putting", "put"),
    ("set", "sets", "setting", "set"),
    ("hang", "hangs", "hanging", "hung"),
    ("speak", "speaks", "speaking", "spoke"),
    ("cry", "cries", "crying", "cried"),
    ("read", "reads", "reading", "read"),
    ("write", "writes", "writing", "wrote"),
    ("draw", "draws", "drawing", "drew"),
    ("make", "makes", "making", "made"),
    ("build", "builds", "building", "built"),
    ("cut", "cuts", "cutting", "cut"),
    ("shop", "shops", "shopping", "shopped"),
    ("buy", "buys", "buying", "bought"),
    ("sell", "sells", "selling", "sold"),
    ("pay", "pays", "paying", "paid"),
    ("find", "finds", "finding", "found"),
    ("seek", "seeks", "seeking", "sought"),
    ("meet", "meets", "meeting", "met"),
    ("give", "gives", "giving", "gave"),
    ("take", "takes", "taking", "took"),
    ("hide", "hides", "hiding", "hid"),
    ("throw", "throws", "throwing", "threw"),
    ("catch", "catches", "catching", "caught"),
    ("wear", "wears", "wearing", "wore"),
    ("win", "wins", "winning", "won"),
    ("lose", "loses", "losing", "lost"),
    ("creep", "creeps", "creeping", "crept"),
    ("fall", "falls", "falling", "fell"),
    ("slip", "slips", "slipping", "slipped"),
    ("trip", "trips", "tripping", "tripped"),
    ("spin", "spins", "spinning", "spun"),
    ("flip", "flips", "flipping", "flipped"),
    ("shake", "shakes", "shaking", "shook"),
    ("wrap", "wraps", "wrapping", "wrapped"),
    ("dip", "dips", "dipping", "dipped"),
    ("pet", "pets", "petting", "petted"),
    ("hug", "hugs", "hugging", "hugged"),
    ("nod", "nods", "nodding", "nodded"),
    ("grin", "grins", "grinning", "grinned"),
    ("trot", "trots", "trotting", "trotted"),
    ("sing", "sings", "singing", "sang"),
    ("shoot", "shoots", "shooting", "shot"),
]

# Words whose final tag must win regardless of list order.
OVERRIDES = {
    "surf": "V",
    "ski": "V",
    "skateboard": "V",
    "snowboard": "V",
    "glove": "N",
    "watch": "V",
    "stand": "V",
    "swing": "V",
    "slide": "V",
    "open": "A",
    "square": "N",
    "circle": "N",
    "ring": "N",
    "cross": "N",
    "star": "N",
    "bar": "N",
    "diamond": "N",
}

VOWELS = set("aeiou")


def plural(noun: str) -> str:
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in VOWELS:
        return noun[:-1] + "ies"
    if noun.endswith("f"):
        return noun[:-1] + "ves"
    if noun.endswith("fe"):
        return noun[:-2] + "ves"
    return noun + "s"


def verb_forms(base: str) -> tuple[str, str, str]:
    if base.endswith(("s", "x", "z", "ch", "sh")):
        third = base + "es"
    elif base.endswith("y") and base[-2] not in VOWELS:
        third = base[:-1] + "ies"
    else:
        third = base + "s"
    if base.endswith("e") and not base.endswith(("ee", "ye", "oe")):
        gerund, past = base[:-1] + "ing", base + "d"
    elif base.endswith("y"):
        gerund = base + "ing"
        past = base[:-1] + "ied" if base[-2] not in VOWELS else base + "ed"
    else:
        gerund, past = base + "ing", base + "ed"
    return third, gerund, past


def main():
    entries: dict[str, str] = {}

    def add(word: str, tag: str):
        entries.setdefault(word, tag)

    for base in VERBS:
        add(base, "V")
    irregular_bases = {b for b, *_ in IRREGULAR_VERBS}
    for base, third, gerund, past in IRREGULAR_VERBS:
        for form in (base, third, gerund, past):
            entries[form] = "V"
    for base in VERBS:
        if base in irregular_bases:
            continue
        for form in verb_forms(base):
            add(form, "V")
    for noun in NOUNS:
        add(noun, "N")
        add(plural(noun), "N")
    for adj in ADJECTIVES:
        add(adj, "A")
    entries.update(OVERRIDES)

    out = Path(__file__).resolve().parents[1] / "src" / "capstream" / "data" / "pos_lexicon.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{w} {t}" for w, t in sorted(entries.items())]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} entries to {out}")


if __name__ == "__main__":
    main()
