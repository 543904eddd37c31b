#pragma once

// Embedded part-of-speech word lists backing the POS extraction baseline.
// The tagger is lexicon + suffix heuristics, not a trained model; the lists
// skew toward sensory/emotional vocabulary seen in haptic descriptions.

#include <cstddef>

namespace hapticlang::detail {

inline constexpr const char* kPosAdjectives[] = {
    "abrasive", "abrupt", "active", "aggressive", "airy", "alarming", "alert",
    "alive", "angry", "annoying", "annoyed", "anxious", "appealing", "artificial",
    "artistic", "assailable", "attentive", "attractive", "awake", "awkward", "bad",
    "basic", "beautiful", "billowy", "bored", "boring", "bouncy", "breezy",
    "bright", "brisk", "bubbly", "bumpy", "busy", "buzzy", "calm", "calming",
    "careful", "careless", "cheap", "cheerful", "choppy", "clean", "clear",
    "clumsy", "coarse", "cold", "comfortable", "complex", "confident", "confused",
    "confusing", "consistent", "constant", "content", "continuous", "cool",
    "crazy", "creative", "creepy", "crisp", "curious", "cute", "damp", "dangerous",
    "dead", "deep", "delicate", "dense", "depressed", "difficult", "dirty",
    "discreet", "distracting", "distrustful", "disgusting", "dreamy", "drowsy",
    "dry", "dull", "dynamic", "eager", "easy", "elegant", "electric", "electrical",
    "electronic", "emotional", "energetic", "engaging", "enjoyable", "enthusiastic",
    "erratic", "even", "exciting", "excited", "explosive", "faint", "fake",
    "familiar", "fast", "fearful", "fierce", "fine", "firm", "fizzy", "flat",
    "flowing", "fluffy", "foamy", "forceful", "foreign", "frantic", "frenzied",
    "fresh", "frictional", "friendly", "frightening", "fun", "funny", "furry",
    "fuzzy", "gentle", "genuine", "gloomy", "good", "graceful", "gradual",
    "grainy", "grating", "great", "gritty", "gross", "happy", "hard", "harsh",
    "heavy", "hectic", "hesitant", "high", "hollow", "hostile", "hot", "hypnotic",
    "imaginative", "immersive", "impatient", "imperative", "important",
    "indifferent", "insecure", "intense", "interesting", "intermittent",
    "inviting", "irregular", "irritated", "irritating", "itchy", "jagged",
    "jarring", "jittery", "jumpy", "keen", "lagging", "lazy", "light", "limited",
    "lively", "localized", "loud", "lovely", "low", "machinelike", "magical",
    "massaging", "mechanical", "meditative", "mellow", "melodic", "mild",
    "monotonous", "muddy", "musical", "mysterious", "natural", "nervous",
    "neutral", "new", "nice", "noisy", "numb", "odd", "old", "oppressive",
    "ordinary", "organic", "painful", "painless", "passive", "patient",
    "peaceful", "persistent", "phony", "painstaking", "plain", "playful",
    "pleasant", "pleasing", "powerful", "powerless", "precise", "predictable",
    "prickly", "pulsating", "pulsing", "pure", "quick", "quiet", "random",
    "rapid", "realistic", "regular", "relaxed", "relaxing", "repetitive",
    "repulsive", "resistant", "resistive", "restless", "restrictive",
    "rhythmic", "rhythmical", "risky", "rough", "rubbery", "rugged", "rusty",
    "sad", "safe", "sandy", "satisfied", "satisfying", "scared", "scary",
    "scratchy", "secure", "sensationless", "serene", "shady", "shaky", "sharp",
    "shocking", "silent", "silky", "silly", "simple", "sleepy", "slick",
    "slippery", "slow", "sluggish", "small", "smooth", "soft", "soothing",
    "sore", "special", "spiky", "spongy", "sporadic", "stable", "staccato",
    "stale", "startling", "startled", "static", "steady", "sticky", "stiff",
    "stimulating", "stimulative", "strange", "stressful", "strong", "stumbling",
    "subtle", "sudden", "surprised", "surprising", "sustained", "sweet",
    "tender", "tense", "threatening", "thunderous", "ticklish", "tickly",
    "tight", "tingling", "tingly", "tired", "tranquil", "trusting", "typical",
    "ugly", "uncomfortable", "unenthusiastic", "uneven", "unexpected",
    "unfamiliar", "uniform", "unique", "unnatural", "unpleasant",
    "unpredictable", "unstable", "unusual", "urgent", "varied", "velvety",
    "vibrant", "vibrating", "vibratory", "vigilant", "violent", "vivid",
    "warm", "wavy", "weak", "weird", "wet", "wild", "windy", "wonderful",
    "wooden", "worried",
};

struct PosNounEntry {
  const char* word;
  const char* category;  // sensory | object | emotion
};

inline constexpr PosNounEntry kPosNouns[] = {
    {"amplitude", "sensory"},   {"beat", "sensory"},       {"bump", "sensory"},
    {"burst", "sensory"},       {"buzz", "sensory"},       {"chill", "sensory"},
    {"click", "sensory"},       {"current", "sensory"},    {"edge", "sensory"},
    {"feeling", "sensory"},     {"flutter", "sensory"},    {"frequency", "sensory"},
    {"friction", "sensory"},    {"gap", "sensory"},        {"grain", "sensory"},
    {"hardness", "sensory"},    {"heat", "sensory"},       {"hum", "sensory"},
    {"itch", "sensory"},        {"jolt", "sensory"},       {"knock", "sensory"},
    {"numbness", "sensory"},    {"oscillation", "sensory"},{"pause", "sensory"},
    {"pressure", "sensory"},    {"prick", "sensory"},      {"pulse", "sensory"},
    {"resistance", "sensory"},  {"rhythm", "sensory"},     {"ripple", "sensory"},
    {"roughness", "sensory"},   {"sensation", "sensory"},  {"shake", "sensory"},
    {"shock", "sensory"},       {"silence", "sensory"},    {"smoothness", "sensory"},
    {"softness", "sensory"},    {"spark", "sensory"},      {"spasm", "sensory"},
    {"sting", "sensory"},       {"tap", "sensory"},        {"tempo", "sensory"},
    {"tension", "sensory"},     {"texture", "sensory"},    {"throb", "sensory"},
    {"tick", "sensory"},        {"tickle", "sensory"},     {"tingle", "sensory"},
    {"touch", "sensory"},       {"tremor", "sensory"},     {"twitch", "sensory"},
    {"vibration", "sensory"},   {"warmth", "sensory"},     {"wave", "sensory"},
    {"zap", "sensory"},
    {"airplane", "object"},     {"alarm", "object"},       {"alert", "object"},
    {"ant", "object"},          {"avalanche", "object"},   {"beach", "object"},
    {"bee", "object"},          {"bell", "object"},        {"bicycle", "object"},
    {"bird", "object"},         {"boat", "object"},        {"brush", "object"},
    {"bubble", "object"},       {"bug", "object"},         {"butterfly", "object"},
    {"button", "object"},       {"car", "object"},         {"cat", "object"},
    {"champagne", "object"},    {"cloth", "object"},       {"cotton", "object"},
    {"creek", "object"},        {"dog", "object"},         {"doorbell", "object"},
    {"drill", "object"},        {"drum", "object"},        {"earthquake", "object"},
    {"elevator", "object"},     {"engine", "object"},      {"escalator", "object"},
    {"explosion", "object"},    {"fabric", "object"},      {"feather", "object"},
    {"fire", "object"},         {"firecracker", "object"}, {"firework", "object"},
    {"fly", "object"},          {"foam", "object"},        {"fur", "object"},
    {"glass", "object"},        {"grass", "object"},       {"guitar", "object"},
    {"heartbeat", "object"},    {"helicopter", "object"},  {"honey", "object"},
    {"ice", "object"},          {"insect", "object"},      {"jelly", "object"},
    {"keyboard", "object"},     {"lake", "object"},        {"laser", "object"},
    {"leather", "object"},      {"lightning", "object"},   {"machine", "object"},
    {"massage", "object"},      {"melody", "object"},      {"message", "object"},
    {"metal", "object"},        {"mosquito", "object"},    {"motor", "object"},
    {"motorcycle", "object"},   {"mud", "object"},         {"music", "object"},
    {"notification", "object"}, {"ocean", "object"},       {"oil", "object"},
    {"paper", "object"},        {"phone", "object"},       {"piano", "object"},
    {"plastic", "object"},      {"pond", "object"},        {"popcorn", "object"},
    {"rain", "object"},         {"razor", "object"},       {"ringtone", "object"},
    {"river", "object"},        {"rock", "object"},        {"rocket", "object"},
    {"rubber", "object"},       {"sand", "object"},        {"sandpaper", "object"},
    {"saw", "object"},          {"sea", "object"},         {"shower", "object"},
    {"silk", "object"},         {"siren", "object"},       {"skin", "object"},
    {"snake", "object"},        {"snow", "object"},        {"soap", "object"},
    {"soda", "object"},         {"song", "object"},        {"stone", "object"},
    {"storm", "object"},        {"stream", "object"},      {"thunder", "object"},
    {"tide", "object"},         {"toothbrush", "object"},  {"train", "object"},
    {"truck", "object"},        {"velvet", "object"},      {"violin", "object"},
    {"warning", "object"},      {"water", "object"},       {"waterfall", "object"},
    {"wind", "object"},         {"wood", "object"},        {"wool", "object"},
    {"worm", "object"},         {"zipper", "object"},
    {"amusement", "emotion"},   {"anger", "emotion"},      {"annoyance", "emotion"},
    {"anticipation", "emotion"},{"anxiety", "emotion"},    {"awe", "emotion"},
    {"boredom", "emotion"},     {"calmness", "emotion"},   {"chaos", "emotion"},
    {"comfort", "emotion"},     {"confusion", "emotion"},  {"curiosity", "emotion"},
    {"danger", "emotion"},      {"delight", "emotion"},    {"discomfort", "emotion"},
    {"disgust", "emotion"},     {"distrust", "emotion"},   {"excitement", "emotion"},
    {"fear", "emotion"},        {"frustration", "emotion"},{"happiness", "emotion"},
    {"harmony", "emotion"},     {"interest", "emotion"},   {"irritation", "emotion"},
    {"joy", "emotion"},         {"pain", "emotion"},       {"panic", "emotion"},
    {"peace", "emotion"},       {"pleasure", "emotion"},   {"relaxation", "emotion"},
    {"relief", "emotion"},      {"sadness", "emotion"},    {"safety", "emotion"},
    {"satisfaction", "emotion"},{"stress", "emotion"},     {"surprise", "emotion"},
    {"trust", "emotion"},       {"urgency", "emotion"},    {"wonder", "emotion"},
};

inline constexpr const char* kPosStopwords[] = {
    "a", "about", "above", "actually", "after", "again", "against", "ah", "all",
    "almost", "also", "although", "always", "am", "an", "and", "any", "anything",
    "are", "as", "at", "basically", "be", "because", "been", "before", "being",
    "below", "between", "bit", "but", "by", "came", "can", "cannot", "certainly",
    "come", "comes", "coming", "could", "dare", "definitely", "describe",
    "described", "describes", "did", "do", "does", "doing", "down", "during",
    "eight", "even", "exactly", "feel", "feels", "felt", "finger",
    "fingers", "first", "five", "for", "four", "from", "further", "get",
    "gets", "getting", "go", "goes", "going", "got", "guess", "had", "hand",
    "hands", "has", "have", "having", "he", "her", "here", "him", "his",
    "honestly", "how", "hundred", "i", "if", "imagine", "imagined", "in",
    "into", "is", "it", "its", "just", "kind", "knew", "know", "knows", "least",
    "less", "like", "literally", "little", "look", "looked", "looks", "lot",
    "made", "make", "makes", "making", "many", "may", "maybe", "me", "might",
    "mine", "moment", "more", "most", "much", "must", "my", "nearly", "need",
    "never", "nine", "no", "nor", "not", "nothing", "now", "of", "off", "often",
    "oh", "ok", "okay", "on", "once", "one", "only", "or", "other", "ought",
    "our", "out", "over", "perhaps", "pretty", "probably", "put", "puts",
    "putting", "quite", "rarely", "rather", "really", "remind", "reminded",
    "reminds", "said", "saw", "say", "saying", "says", "second", "see",
    "seeing", "seem", "seemed", "seems", "seen", "sees", "seven", "shall",
    "she", "should", "since", "six", "so", "some", "someone", "something",
    "sometimes", "somewhat", "sort", "sound", "sounded", "sounds", "stuff",
    "take", "takes", "taking", "ten", "than", "that", "the", "their", "them",
    "then", "there", "these", "they", "thing", "things", "think", "thinks",
    "third", "this", "those", "thought", "thousand", "three", "through",
    "time", "times", "to", "too", "took", "two", "uh", "um", "under", "unless",
    "until", "up", "us", "usually", "very", "was", "way", "ways", "we", "well",
    "went", "were", "what", "when", "where", "which", "while", "who", "whom",
    "whose", "why", "will", "with", "would", "yeah", "yes", "yet", "you",
    "your", "yours", "zero",
};

}  // namespace hapticlang::detail
