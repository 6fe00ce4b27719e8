#pragma once

// Bundled demo lexicon: English-like tokens with valences in [-1, +1].
// Generated once and frozen; edit by hand if needed.

#include <array>
#include <string_view>
#include <utility>

namespace toolprint::lexicon_data {

inline constexpr std::array<std::pair<std::string_view, double>, 413> kValences{{
    {"good", 0.34},
    {"great", 0.90},
    {"excellent", 0.25},
    {"happy", 0.80},
    {"love", 0.68},
    {"wonderful", 0.70},
    {"amazing", 0.32},
    {"awesome", 0.21},
    {"fantastic", 0.72},
    {"nice", 0.85},
    {"best", 0.53},
    {"better", 0.47},
    {"brilliant", 0.28},
    {"beautiful", 0.93},
    {"superb", 0.25},
    {"outstanding", 0.71},
    {"perfect", 0.67},
    {"pleasant", 0.75},
    {"delightful", 0.90},
    {"glad", 0.63},
    {"joy", 0.53},
    {"joyful", 0.71},
    {"cheerful", 0.77},
    {"success", 0.41},
    {"successful", 0.33},
    {"win", 0.71},
    {"winning", 0.79},
    {"winner", 0.32},
    {"positive", 0.47},
    {"fortunate", 0.62},
    {"lucky", 0.32},
    {"hope", 0.96},
    {"hopeful", 0.25},
    {"proud", 0.81},
    {"pride", 0.54},
    {"praise", 0.84},
    {"admire", 0.52},
    {"admirable", 0.38},
    {"enjoy", 0.61},
    {"enjoyable", 0.42},
    {"fun", 0.92},
    {"funny", 0.80},
    {"friendly", 0.95},
    {"kind", 0.43},
    {"kindness", 0.57},
    {"generous", 0.25},
    {"gentle", 0.33},
    {"calm", 0.86},
    {"peaceful", 0.51},
    {"safe", 0.89},
    {"secure", 0.20},
    {"strong", 0.24},
    {"strength", 0.64},
    {"healthy", 0.66},
    {"fresh", 0.72},
    {"clean", 0.21},
    {"clever", 0.23},
    {"smart", 0.97},
    {"wise", 0.62},
    {"bright", 0.24},
    {"charming", 0.89},
    {"lovely", 0.29},
    {"cute", 0.23},
    {"sweet", 0.97},
    {"warm", 0.41},
    {"welcome", 0.93},
    {"thank", 0.25},
    {"thanks", 0.53},
    {"grateful", 0.60},
    {"thankful", 0.56},
    {"appreciate", 0.92},
    {"fair", 0.52},
    {"honest", 0.72},
    {"trust", 0.52},
    {"trusted", 0.60},
    {"reliable", 0.41},
    {"helpful", 0.68},
    {"useful", 0.71},
    {"valuable", 0.85},
    {"worthy", 0.94},
    {"benefit", 0.75},
    {"beneficial", 0.95},
    {"gain", 0.76},
    {"improve", 0.73},
    {"improved", 0.24},
    {"improvement", 0.74},
    {"progress", 0.38},
    {"growth", 0.33},
    {"thrive", 0.86},
    {"thriving", 0.92},
    {"prosper", 0.64},
    {"prosperous", 0.44},
    {"rich", 0.60},
    {"wealthy", 0.77},
    {"free", 0.86},
    {"freedom", 0.23},
    {"celebrate", 0.43},
    {"celebration", 0.42},
    {"festive", 0.38},
    {"party", 0.89},
    {"smile", 0.53},
    {"smiling", 0.37},
    {"laugh", 0.29},
    {"laughter", 0.77},
    {"comfort", 0.55},
    {"comfortable", 0.56},
    {"cozy", 0.22},
    {"relax", 0.28},
    {"relaxed", 0.66},
    {"satisfied", 0.46},
    {"satisfying", 0.33},
    {"pleased", 0.49},
    {"pleasure", 0.68},
    {"glory", 0.78},
    {"glorious", 0.82},
    {"hero", 0.23},
    {"heroic", 0.89},
    {"brave", 0.84},
    {"courage", 0.27},
    {"inspire", 0.54},
    {"inspiring", 0.52},
    {"inspired", 0.73},
    {"creative", 0.22},
    {"innovative", 0.86},
    {"impressive", 0.53},
    {"incredible", 0.75},
    {"magnificent", 0.22},
    {"marvelous", 0.63},
    {"splendid", 0.72},
    {"terrific", 0.23},
    {"fabulous", 0.27},
    {"stellar", 0.37},
    {"remarkable", 0.88},
    {"exceptional", 0.29},
    {"favorable", 1.00},
    {"favorite", 0.92},
    {"like", 0.72},
    {"liked", 0.88},
    {"likes", 0.29},
    {"loved", 0.82},
    {"loving", 0.86},
    {"adore", 0.82},
    {"adored", 0.93},
    {"care", 0.83},
    {"caring", 0.85},
    {"support", 0.87},
    {"supportive", 0.73},
    {"encourage", 0.98},
    {"encouraging", 0.82},
    {"optimistic", 0.57},
    {"confident", 0.64},
    {"energetic", 0.28},
    {"enthusiastic", 0.58},
    {"excited", 0.38},
    {"exciting", 0.24},
    {"thrilled", 0.91},
    {"victory", 0.28},
    {"triumph", 0.66},
    {"achieve", 0.35},
    {"achievement", 0.53},
    {"accomplish", 0.58},
    {"accomplished", 0.47},
    {"reward", 0.21},
    {"rewarding", 0.70},
    {"bless", 0.91},
    {"blessed", 0.45},
    {"heaven", 0.41},
    {"paradise", 0.21},
    {"dream", 0.38},
    {"harmony", 0.25},
    {"unity", 0.73},
    {"peace", 0.91},
    {"respect", 0.91},
    {"respected", 0.81},
    {"honor", 0.22},
    {"honored", 0.97},
    {"elegant", 0.75},
    {"graceful", 0.58},
    {"stylish", 1.00},
    {"cool", 0.26},
    {"neat", 0.88},
    {"tidy", 0.38},
    {"efficient", 0.23},
    {"effective", 0.20},
    {"robust", 0.40},
    {"solid", 0.40},
    {"stable", 0.28},
    {"recommend", 0.67},
    {"recommended", 0.56},
    {"approve", 0.78},
    {"approved", 0.49},
    {"agree", 0.82},
    {"ideal", 0.95},
    {"upbeat", 0.90},
    {"vibrant", 0.78},
    {"lively", 0.90},
    {"radiant", 0.75},
    {"sunny", 0.93},
    {"bad", -0.28},
    {"terrible", -0.61},
    {"awful", -0.46},
    {"horrible", -0.44},
    {"hate", -0.91},
    {"sad", -0.68},
    {"angry", -0.31},
    {"poor", -0.84},
    {"worst", -0.45},
    {"worse", -0.31},
    {"ugly", -0.33},
    {"nasty", -0.52},
    {"boring", -0.54},
    {"annoying", -0.98},
    {"annoyed", -0.24},
    {"disappointing", -0.78},
    {"disappointed", -0.95},
    {"disappointment", -0.98},
    {"fail", -0.78},
    {"failed", -0.60},
    {"failure", -0.71},
    {"lose", -0.92},
    {"losing", -0.35},
    {"loser", -0.33},
    {"loss", -0.64},
    {"wrong", -0.52},
    {"evil", -0.24},
    {"cruel", -0.84},
    {"mean", -0.65},
    {"rude", -0.38},
    {"hostile", -0.34},
    {"violent", -0.67},
    {"violence", -0.76},
    {"danger", -0.79},
    {"dangerous", -0.50},
    {"unsafe", -0.79},
    {"threat", -0.32},
    {"threaten", -0.28},
    {"fear", -0.87},
    {"afraid", -0.62},
    {"scared", -0.81},
    {"scary", -0.50},
    {"panic", -0.21},
    {"anxious", -0.34},
    {"anxiety", -0.95},
    {"worry", -0.72},
    {"worried", -0.56},
    {"stress", -0.55},
    {"stressful", -0.87},
    {"pain", -0.93},
    {"painful", -0.92},
    {"hurt", -0.73},
    {"injury", -0.60},
    {"injured", -0.84},
    {"sick", -0.99},
    {"ill", -0.36},
    {"disease", -0.63},
    {"death", -0.79},
    {"dead", -0.72},
    {"die", -0.98},
    {"dying", -0.74},
    {"kill", -0.52},
    {"killed", -0.33},
    {"murder", -0.31},
    {"crime", -0.46},
    {"criminal", -0.88},
    {"corrupt", -0.68},
    {"corruption", -0.75},
    {"fraud", -0.46},
    {"scam", -0.80},
    {"lie", -0.99},
    {"liar", -0.95},
    {"lies", -0.28},
    {"dishonest", -0.75},
    {"cheat", -0.31},
    {"cheated", -0.70},
    {"steal", -0.96},
    {"stolen", -0.85},
    {"theft", -0.61},
    {"abuse", -0.61},
    {"abusive", -0.65},
    {"attack", -0.81},
    {"attacked", -0.62},
    {"war", -0.61},
    {"enemy", -0.79},
    {"conflict", -0.35},
    {"crisis", -0.92},
    {"disaster", -0.81},
    {"catastrophe", -0.56},
    {"tragic", -0.87},
    {"tragedy", -0.77},
    {"destroy", -0.56},
    {"destroyed", -0.76},
    {"damage", -0.78},
    {"damaged", -0.57},
    {"broken", -0.27},
    {"break", -0.60},
    {"ruin", -0.46},
    {"ruined", -0.64},
    {"waste", -0.56},
    {"useless", -0.97},
    {"worthless", -0.80},
    {"pathetic", -0.88},
    {"miserable", -0.33},
    {"misery", -0.39},
    {"depressed", -0.53},
    {"depressing", -0.77},
    {"gloomy", -0.96},
    {"grim", -0.70},
    {"dark", -0.38},
    {"bleak", -0.98},
    {"hopeless", -0.59},
    {"helpless", -0.37},
    {"weak", -0.21},
    {"fragile", -0.79},
    {"unstable", -0.64},
    {"chaos", -0.99},
    {"chaotic", -0.49},
    {"mess", -0.64},
    {"messy", -0.56},
    {"dirty", -0.46},
    {"filthy", -0.80},
    {"disgusting", -0.33},
    {"gross", -0.89},
    {"sickening", -0.72},
    {"offensive", -0.70},
    {"insult", -0.40},
    {"insulting", -0.89},
    {"shame", -0.53},
    {"shameful", -0.93},
    {"guilty", -0.93},
    {"blame", -0.28},
    {"accuse", -0.58},
    {"accused", -0.77},
    {"reject", -0.32},
    {"rejected", -0.27},
    {"refuse", -0.60},
    {"denied", -0.77},
    {"deny", -0.74},
    {"problem", -0.59},
    {"trouble", -0.23},
    {"difficult", -0.27},
    {"hard", -0.69},
    {"harsh", -0.57},
    {"severe", -0.61},
    {"bitter", -0.26},
    {"unfair", -0.80},
    {"unjust", -0.21},
    {"injustice", -0.61},
    {"poverty", -0.65},
    {"hunger", -0.88},
    {"starve", -0.99},
    {"suffer", -0.24},
    {"suffering", -0.34},
    {"victim", -0.58},
    {"complain", -0.47},
    {"complaint", -0.80},
    {"protest", -0.22},
    {"riot", -0.92},
    {"fight", -0.91},
    {"fighting", -0.71},
    {"argue", -0.55},
    {"argument", -0.90},
    {"struggle", -0.57},
    {"outrage", -0.66},
    {"outraged", -0.88},
    {"furious", -0.66},
    {"rage", -0.79},
    {"mad", -0.26},
    {"upset", -0.44},
    {"frustrated", -0.59},
    {"frustrating", -0.30},
    {"irritating", -0.52},
    {"tedious", -0.37},
    {"dull", -0.69},
    {"lame", -0.93},
    {"stupid", -0.30},
    {"dumb", -0.38},
    {"idiot", -0.23},
    {"foolish", -0.97},
    {"ridiculous", -0.45},
    {"absurd", -0.81},
    {"silly", -0.35},
    {"crap", -0.40},
    {"junk", -0.22},
    {"trash", -0.68},
    {"garbage", -0.41},
    {"horrendous", -0.83},
    {"dreadful", -0.94},
    {"appalling", -0.78},
    {"atrocious", -0.72},
    {"inferior", -0.49},
    {"mediocre", -0.58},
    {"lousy", -0.39},
    {"shoddy", -0.45},
    {"flawed", -0.36},
    {"defective", -0.76},
    {"faulty", -0.27},
    {"error", -0.34},
    {"mistake", -0.22},
    {"bug", -0.24},
    {"crash", -0.84},
    {"slow", -0.89},
    {"delay", -0.83},
    {"delayed", -0.47},
    {"late", -0.24},
    {"lonely", -0.42},
    {"alone", -0.86},
    {"abandoned", -0.85},
    {"neglect", -0.63},
    {"neglected", -0.50},
    {"sorry", -0.72},
    {"regret", -0.96},
    {"tears", -0.95},
    {"cry", -0.31},
}};

inline constexpr std::array<std::string_view, 12> kNegators{{
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor",
    "without", "cannot", "dont", "isnt"}};

inline constexpr std::array<std::pair<std::string_view, double>, 10> kBoosters{{
    {"very", 0.293}, {"really", 0.293}, {"extremely", 0.293}, {"absolutely", 0.293},
    {"incredibly", 0.293}, {"totally", 0.293}, {"so", 0.293}, {"quite", 0.2},
    {"highly", 0.293}, {"especially", 0.293}}};

inline constexpr std::array<std::string_view, 193> kFiller{{
    "the",
    "a",
    "an",
    "of",
    "to",
    "in",
    "on",
    "at",
    "for",
    "with",
    "by",
    "from",
    "as",
    "is",
    "was",
    "are",
    "were",
    "be",
    "been",
    "it",
    "this",
    "that",
    "these",
    "those",
    "there",
    "here",
    "and",
    "or",
    "but",
    "then",
    "than",
    "also",
    "just",
    "about",
    "into",
    "over",
    "under",
    "after",
    "before",
    "during",
    "while",
    "because",
    "if",
    "when",
    "where",
    "which",
    "who",
    "what",
    "how",
    "all",
    "some",
    "any",
    "each",
    "every",
    "many",
    "much",
    "more",
    "most",
    "other",
    "another",
    "such",
    "only",
    "own",
    "same",
    "time",
    "day",
    "year",
    "people",
    "way",
    "thing",
    "man",
    "woman",
    "child",
    "world",
    "life",
    "hand",
    "part",
    "place",
    "case",
    "week",
    "company",
    "system",
    "program",
    "question",
    "work",
    "government",
    "number",
    "night",
    "point",
    "home",
    "water",
    "room",
    "mother",
    "area",
    "money",
    "story",
    "fact",
    "month",
    "lot",
    "right",
    "study",
    "book",
    "eye",
    "job",
    "word",
    "business",
    "issue",
    "side",
    "head",
    "house",
    "service",
    "friend",
    "father",
    "power",
    "hour",
    "game",
    "line",
    "end",
    "member",
    "law",
    "car",
    "city",
    "community",
    "name",
    "president",
    "team",
    "minute",
    "idea",
    "kid",
    "body",
    "information",
    "back",
    "parent",
    "face",
    "others",
    "level",
    "office",
    "door",
    "health",
    "person",
    "art",
    "history",
    "result",
    "change",
    "morning",
    "reason",
    "research",
    "girl",
    "guy",
    "moment",
    "air",
    "teacher",
    "force",
    "education",
    "say",
    "get",
    "make",
    "go",
    "know",
    "take",
    "see",
    "come",
    "think",
    "look",
    "want",
    "give",
    "use",
    "find",
    "tell",
    "ask",
    "seem",
    "feel",
    "try",
    "leave",
    "call",
    "keep",
    "put",
    "let",
    "begin",
    "show",
    "hear",
    "play",
    "run",
    "move",
    "live",
    "believe",
    "hold",
    "bring",
    "happen",
    "write",
    "provide",
    "sit",
    "stand",
}};

}  // namespace toolprint::lexicon_data
