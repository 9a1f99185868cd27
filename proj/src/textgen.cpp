#include "docsynth/textgen.hpp"

#include "docsynth/rng.hpp"

namespace docsynth {

namespace {

// Short public-domain passages (Carroll, Austen, Wells, Aesop) used by the
// synthetic text generator. One sentence per line.
const char* kSampleText = R"(Alice was beginning to get very tired of sitting by her sister on the bank, and of having nothing to do.
Once or twice she had peeped into the book her sister was reading, but it had no pictures or conversations in it.
And what is the use of a book, thought Alice, without pictures or conversations?
So she was considering in her own mind whether the pleasure of making a daisy chain would be worth the trouble of getting up and picking the daisies.
The hot day made her feel very sleepy and stupid.
Suddenly a white rabbit with pink eyes ran close by her.
There was nothing so very remarkable in that, nor did Alice think it so very much out of the way to hear the rabbit say to itself that it was late.
When she thought it over afterwards, it occurred to her that she ought to have wondered at this, but at the time it all seemed quite natural.
The rabbit actually took a watch out of its waistcoat pocket, looked at it, and then hurried on.
Alice started to her feet, for it flashed across her mind that she had never before seen a rabbit with either a waistcoat pocket or a watch to take out of it.
Burning with curiosity, she ran across the field after it.
She was just in time to see it pop down a large rabbit hole under the hedge.
In another moment down went Alice after it, never once considering how in the world she was to get out again.
The rabbit hole went straight on like a tunnel for some way, and then dipped suddenly down.
Alice had not a moment to think about stopping herself before she found herself falling down a very deep well.
Either the well was very deep, or she fell very slowly, for she had plenty of time as she went down to look about her.
First, she tried to look down and make out what she was coming to, but it was too dark to see anything.
Then she looked at the sides of the well, and noticed that they were filled with cupboards and book shelves.
Here and there she saw maps and pictures hung upon pegs.
She took down a jar from one of the shelves as she passed.
It was labelled orange marmalade, but to her great disappointment it was empty.
She did not like to drop the jar for fear of killing somebody underneath, so managed to put it into one of the cupboards as she fell past it.
Down, down, down, would the fall never come to an end?
I wonder how many miles I have fallen by this time, she said aloud.
I must be getting somewhere near the centre of the earth.
It is a truth universally acknowledged, that a single man in possession of a good fortune must be in want of a wife.
However little known the feelings or views of such a man may be on his first entering a neighbourhood, this truth is so well fixed in the minds of the surrounding families.
He is considered as the rightful property of some one or other of their daughters.
My dear Mr Bennet, said his lady to him one day, have you heard that Netherfield Park is let at last?
Mr Bennet replied that he had not.
But it is, returned she, for Mrs Long has just been here, and she told me all about it.
Mr Bennet made no answer.
Do not you want to know who has taken it? cried his wife impatiently.
You want to tell me, and I have no objection to hearing it.
This was invitation enough.
Why, my dear, you must know, Mrs Long says that Netherfield is taken by a young man of large fortune from the north of England.
He came down on Monday in a chaise and four to see the place, and was so much delighted with it that he agreed with Mr Morris immediately.
He is to take possession before Michaelmas, and some of his servants are to be in the house by the end of next week.
What is his name? she asked directly.
Is he married or single? repeated his wife.
Oh single, my dear, to be sure, a single man of large fortune, four or five thousand a year.
What a fine thing for our girls!
The time traveller, for so it will be convenient to speak of him, was expounding a recondite matter to us.
His grey eyes shone and twinkled, and his usually pale face was flushed and animated.
The fire burned brightly, and the soft radiance of the incandescent lights in the lilies of silver caught the bubbles that flashed and passed in our glasses.
Our chairs, being his patents, embraced and caressed us rather than submitted to be sat upon.
There was that luxurious after dinner atmosphere when thought roams gracefully free of the trammels of precision.
And he put it to us in this way, marking the points with a lean forefinger, as we sat and lazily admired his earnestness over this new paradox.
You must follow me carefully, he said.
I shall have to controvert one or two ideas that are almost universally accepted.
The geometry, for instance, they taught you at school is founded on a misconception.
Is not that rather a large thing to expect us to begin upon? said Filby, an argumentative person with red hair.
I do not mean to ask you to accept anything without reasonable ground for it.
You will soon admit as much as I need from you.
You know of course that a mathematical line, a line of thickness nil, has no real existence.
They taught you that, and neither has a mathematical plane.
These things are mere abstractions.
A hungry fox saw some fine bunches of grapes hanging from a vine that was trained along a high trellis.
He did his best to reach them by jumping as high as he could into the air.
But it was all in vain, for they were just out of reach.
So he gave up trying, and walked away with an air of dignity and unconcern.
I thought those grapes were ripe, he remarked, but I see now they are quite sour.
A crow was sitting on a branch of a tree with a piece of cheese in her beak.
A fox observed her and set his wits to work to discover some way of getting the cheese.
Coming and standing under the tree, he looked up and said, what a noble bird I see above me.
Her beauty is without equal, and the hue of her plumage exquisite.
If only her voice is as sweet as her looks are fair, she ought without doubt to be queen of the birds.
The crow was hugely flattered by this, and just to show the fox that she could sing, she gave a loud caw.
Down came the cheese, of course, and the fox, snatching it up, said, you have a voice, madam, I see.
What you want is wits.
A hare was one day making fun of a tortoise for being so slow upon his feet.
Wait a bit, said the tortoise, I will run a race with you, and I will wager that I win.
Oh well, replied the hare, who was much amused at the idea, let us try and see.
It was soon agreed that the fox should set a course for them and be the judge.
When the time came, both started off together, but the hare was soon so far ahead that he thought he might as well have a rest.
So down he lay and fell fast asleep.
Meanwhile the tortoise kept plodding on, and in time reached the goal.
At last the hare woke up with a start, and dashed on at his fastest.
But it was too late, for the tortoise had won the race.
Slow and steady wins the race.
A shepherd boy was tending his flock near a village, and thought it would be great fun to hoax the villagers by pretending that a wolf was attacking the sheep.
So he shouted out, wolf, wolf, and when the people came running up he laughed at them for their pains.
He did this more than once, and every time the villagers found they had been hoaxed, for there was no wolf at all.
At last a wolf really did come, and the boy cried, wolf, wolf, as loud as he could.
But the people were so used to hearing him call that they took no notice of his cries for help.
And so the wolf had it all his own way, and killed off sheep after sheep at his leisure.
You cannot believe a liar even when he tells the truth.
The north wind and the sun had a dispute about which was the stronger of the two.
They agreed that the one who could first strip a traveller of his cloak should be counted the winner.
The wind tried first, and blew with all his might.
But the keener his blasts, the closer the traveller wrapped his cloak around him.
Then the sun began to shine in all his warmth and glory.
The traveller soon found it too hot to walk with his cloak on, and at last flung it to the ground.
So the wind had to admit that the sun was the stronger of the two.
Persuasion is better than force.
A lion was awakened from sleep by a mouse running over his face.
Rising up angrily, he caught him and was about to kill him, when the mouse piteously entreated, if you would only spare my life, I would be sure to repay your kindness.
The lion laughed and let him go.
It happened shortly after this that the lion was caught by some hunters, who bound him by strong ropes to the ground.
The mouse, recognizing his roar, came and gnawed the rope with his teeth, and set him free.
You ridiculed the idea of my ever being able to help you, said the mouse.
Now you know that it is possible for even a mouse to confer benefits on a lion.
No act of kindness, no matter how small, is ever wasted.)";

std::vector<std::string> split_lines(const char* text) {
  std::vector<std::string> out;
  std::string current;
  for (const char* p = text; *p; ++p) {
    if (*p == '\n') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += *p;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

}  // namespace

const std::vector<std::string>& sample_sentences() {
  static const std::vector<std::string> sentences = split_lines(kSampleText);
  return sentences;
}

LabeledCorpus generate_corpus(int sentences, uint64_t seed) {
  const std::vector<std::string>& base = sample_sentences();
  Rng rng(seed);
  LabeledCorpus corpus;
  corpus.origin = "generated from the bundled sample text";
  for (int i = 0; i < sentences; ++i) {
    const std::string& text = base[rng.next_below(base.size())];
    LabeledSentence sentence;
    size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      size_t start = pos;
      while (pos < text.size() && text[pos] != ' ') ++pos;
      if (pos > start) {
        sentence.tokens.push_back(text.substr(start, pos - start));
        sentence.tags.push_back("O");
      }
    }
    if (!sentence.tokens.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace docsynth
