#!/usr/bin/env python3
"""Regenerate src/chatguard/data/lang_profiles.json from the seed corpora
below. Run from the repo root:

    python tools/build_profiles.py

The English seed mixes general prose with typed game-chat register (the text
the filter actually sees); contrast languages use general prose. Tables keep
the top TOP_K trigrams per language, renormalized to sum to 1.
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from pathlib import Path

TOP_K = 2000
NGRAM = 3

SEEDS: dict[str, list[str]] = {
    "en": [
        "the quick brown fox jumps over the lazy dog while everyone watches",
        "i think we should push the lane together before the enemy team comes back",
        "stop walking into the river and help me take this tower already",
        "he always plays the same hero and never buys any support items at all",
        "that was a really good game though the ending felt very close to me",
        "why would you go there alone when you know they have vision everywhere",
        "please just wait for the rest of us before you start the next fight",
        "nice try but you should have backed away when your health got that low",
        "we need more wards on the map or we will keep getting caught out",
        "good luck have fun everyone and remember to mute anyone who gets angry",
        "they are going to take the objective if nobody rotates over right now",
        "i bought the wrong item by accident and now i have no money left",
        "you killed me twice already so i am going to be more careful now",
        "the support kept me alive through that whole fight which was amazing",
        "can someone please tell me why our carry is farming the safe lane still",
        "let us group up as five and end this game before they come back online",
        "that tower dive was so risky but somehow it actually worked out fine",
        "my internet lagged for a second and i walked straight into their team",
        "well played everyone that last fight was the best one of the match",
        "report him for feeding mid all game and abandoning us at the end",
        "gg wp all that was a fun match even if we lost the early game",
        "ez game ez life just kidding you all played really well out there",
        "wow nice ward spot dude i never even saw you standing right there",
        "come mid now and bring the smoke so we can gank their carry again",
        "top is missing again watch your back and stay behind the tower line",
        "noob team never helps me push when i ping the lane a hundred times",
        "one more win and i rank up so please take this seriously guys",
        "they stole our camp again someone block it with a ward next time",
        "i am out of mana wait for me at the shrine before we fight them",
        "lol that chase went on forever you really wanted that kill huh",
        "wtf was that even supposed to be lol you just fed them for free",
        "end it now please this game is over just go high ground and finish",
        "free kill bot lane come fast before he gets back to his tower",
        "care top missing two maybe roaming your way with the rune",
        "ty for the save wp that stun won us the whole fight honestly",
        "brb one sec omw mid after i grab the bounty rune at top",
        "rs mid in ten seconds so keep the lane pushed out until then",
        "dont end yet i need one more item then we can try to finish",
        "go next game this one is done they are way too far ahead now",
        "my bad i missed the hook again the lag tonight is unreal",
    ],
    "es": [
        "el rapido zorro marron salta sobre el perro perezoso mientras todos miran",
        "creo que deberiamos empujar la linea juntos antes de que vuelva el equipo enemigo",
        "deja de caminar hacia el rio y ayudame a tomar esta torre de una vez",
        "siempre juega con el mismo heroe y nunca compra objetos de apoyo",
        "ese fue un buen partido aunque el final me parecio muy cerrado",
        "por que vas solo alla cuando sabes que tienen vision en todas partes",
        "por favor espera al resto de nosotros antes de empezar la proxima pelea",
        "buen intento pero debiste retroceder cuando tu vida estaba tan baja",
        "necesitamos mas guardianes en el mapa o nos seguiran atrapando",
        "buena suerte y diviertanse todos y recuerden silenciar a los enojados",
        "van a tomar el objetivo si nadie rota hacia alla ahora mismo",
        "compre el objeto equivocado por accidente y ahora no me queda dinero",
        "me mataste dos veces asi que ahora voy a tener mas cuidado",
        "el apoyo me mantuvo vivo durante toda esa pelea lo cual fue increible",
        "alguien puede decirme por que nuestro tirador sigue cultivando la linea segura",
        "agrupemonos los cinco y terminemos este juego antes de que regresen",
        "esa entrada a la torre fue muy arriesgada pero de alguna manera funciono",
        "mi internet se trabo un segundo y camine directo hacia su equipo",
        "bien jugado por todos esa ultima pelea fue la mejor del partido",
        "reportenlo por alimentar al medio todo el juego y abandonarnos al final",
    ],
    "pt": [
        "a rapida raposa marrom pula sobre o cachorro preguicoso enquanto todos observam",
        "acho que deveriamos empurrar a rota juntos antes que o time inimigo volte",
        "pare de andar para o rio e me ajude a derrubar essa torre logo",
        "ele sempre joga com o mesmo heroi e nunca compra itens de suporte",
        "foi uma partida muito boa embora o final tenha sido bem apertado",
        "por que voce vai sozinho ali quando sabe que eles tem visao em todo lugar",
        "por favor espere o resto de nos antes de comecar a proxima luta",
        "boa tentativa mas voce deveria ter recuado quando sua vida ficou tao baixa",
        "precisamos de mais sentinelas no mapa ou vamos continuar sendo pegos",
        "boa sorte e divirtam se todos e lembrem de silenciar quem ficar bravo",
        "eles vao pegar o objetivo se ninguem girar para la agora mesmo",
        "comprei o item errado sem querer e agora nao tenho mais dinheiro",
        "voce me matou duas vezes entao agora vou ter mais cuidado",
        "o suporte me manteve vivo durante toda aquela luta o que foi incrivel",
        "alguem pode me dizer por que nosso atirador ainda esta farmando a rota segura",
        "vamos nos agrupar em cinco e acabar este jogo antes que eles voltem",
        "aquele mergulho na torre foi arriscado mas de alguma forma deu certo",
        "minha internet travou por um segundo e andei direto para o time deles",
        "muito bem jogado pessoal aquela ultima luta foi a melhor da partida",
        "denunciem ele por alimentar o meio o jogo todo e nos abandonar no final",
    ],
    "de": [
        "der schnelle braune fuchs springt ueber den faulen hund waehrend alle zusehen",
        "ich denke wir sollten die lane zusammen pushen bevor das gegnerische team zurueckkommt",
        "hoer auf in den fluss zu laufen und hilf mir endlich diesen turm zu nehmen",
        "er spielt immer denselben helden und kauft nie irgendwelche unterstuetzungsgegenstaende",
        "das war wirklich ein gutes spiel obwohl das ende sehr knapp war",
        "warum gehst du alleine dahin wenn du weisst dass sie ueberall sicht haben",
        "bitte warte auf den rest von uns bevor du den naechsten kampf anfaengst",
        "netter versuch aber du haettest dich zurueckziehen sollen als dein leben so niedrig war",
        "wir brauchen mehr waechter auf der karte oder wir werden weiter erwischt",
        "viel glueck und viel spass an alle und denkt daran wuetende spieler stummzuschalten",
        "sie werden das ziel nehmen wenn niemand sofort dorthin rotiert",
        "ich habe aus versehen den falschen gegenstand gekauft und habe jetzt kein geld mehr",
        "du hast mich schon zweimal getoetet also werde ich jetzt vorsichtiger sein",
        "der support hat mich durch den ganzen kampf am leben gehalten was grossartig war",
        "kann mir jemand sagen warum unser carry immer noch die sichere lane farmt",
        "lasst uns zu fuenft gruppieren und dieses spiel beenden bevor sie zurueckkommen",
        "dieser turmtauchgang war so riskant aber irgendwie hat es tatsaechlich funktioniert",
        "mein internet hat kurz gelaggt und ich bin direkt in ihr team gelaufen",
        "gut gespielt alle zusammen der letzte kampf war der beste des spiels",
        "meldet ihn weil er das ganze spiel mid gefeedet und uns am ende verlassen hat",
    ],
    "fr": [
        "le rapide renard brun saute par dessus le chien paresseux pendant que tout le monde regarde",
        "je pense que nous devrions pousser la voie ensemble avant que l equipe ennemie revienne",
        "arrete de marcher dans la riviere et aide moi a prendre cette tour enfin",
        "il joue toujours le meme heros et n achete jamais d objets de soutien",
        "c etait vraiment une bonne partie meme si la fin etait tres serree",
        "pourquoi vas tu la bas tout seul quand tu sais qu ils ont la vision partout",
        "s il te plait attends le reste d entre nous avant de commencer le prochain combat",
        "bien essaye mais tu aurais du reculer quand ta vie etait si basse",
        "nous avons besoin de plus de balises sur la carte ou nous continuerons a nous faire prendre",
        "bonne chance et amusez vous bien et pensez a couper le son des joueurs enerves",
        "ils vont prendre l objectif si personne ne tourne la bas maintenant",
        "j ai achete le mauvais objet par accident et maintenant je n ai plus d argent",
        "tu m as tue deux fois deja donc je vais faire plus attention maintenant",
        "le soutien m a garde en vie pendant tout ce combat ce qui etait incroyable",
        "quelqu un peut il me dire pourquoi notre porteur cultive encore la voie sure",
        "regroupons nous a cinq et finissons cette partie avant qu ils reviennent",
        "cette plongee sous la tour etait si risquee mais d une maniere ou d une autre ca a marche",
        "mon internet a lague une seconde et j ai marche droit dans leur equipe",
        "bien joue tout le monde ce dernier combat etait le meilleur du match",
        "signalez le pour avoir nourri le milieu toute la partie et nous avoir abandonnes",
    ],
    "ru": [
        "быстрая коричневая лиса прыгает через ленивую собаку пока все смотрят",
        "я думаю нам нужно толкать линию вместе пока вражеская команда не вернулась",
        "хватит ходить в реку помоги мне снести эту башню наконец",
        "он всегда играет одним и тем же героем и никогда не покупает предметы поддержки",
        "это была действительно хорошая игра хотя конец был очень близким",
        "зачем ты идешь туда один когда знаешь что у них везде обзор",
        "пожалуйста подожди остальных прежде чем начинать следующую драку",
        "хорошая попытка но тебе нужно было отойти когда здоровье стало таким низким",
        "нам нужно больше вардов на карте иначе нас продолжат ловить",
        "удачи и приятной игры всем и не забудьте замутить злых игроков",
        "они заберут цель если никто сейчас туда не повернет",
        "я случайно купил не тот предмет и теперь у меня нет денег",
        "ты убил меня уже дважды так что теперь я буду осторожнее",
        "поддержка держала меня живым всю драку что было потрясающе",
        "кто нибудь может сказать почему наш керри все еще фармит безопасную линию",
        "давайте соберемся впятером и закончим игру пока они не вернулись",
        "этот заход под башню был таким рискованным но почему то сработал",
        "мой интернет завис на секунду и я зашел прямо в их команду",
        "хорошо сыграли все последняя драка была лучшей за матч",
        "зарепортите его за фид на миде всю игру и за то что бросил нас",
    ],
    "tl": [
        "ang mabilis na kayumangging soro ay tumalon sa tamad na aso habang nanonood ang lahat",
        "sa tingin ko dapat nating itulak ang linya nang magkasama bago bumalik ang kalabang koponan",
        "tumigil ka sa paglalakad sa ilog at tulungan mo akong kunin ang toreng ito",
        "lagi siyang gumagamit ng parehong bayani at hindi bumibili ng mga gamit na pangsuporta",
        "napakagandang laro iyon kahit na napakalapit ng resulta sa huli",
        "bakit ka pupunta doon mag isa kung alam mong may paningin sila kahit saan",
        "pakihintay muna ang iba sa atin bago simulan ang susunod na laban",
        "magandang subok pero dapat umatras ka nang napakababa na ng buhay mo",
        "kailangan natin ng mas maraming bantay sa mapa kung hindi patuloy tayong mahuhuli",
        "maswerte sana at magsaya ang lahat at tandaang i mute ang mga galit na manlalaro",
        "kukunin nila ang layunin kung walang iikot doon ngayon din",
        "nabili ko ang maling gamit nang hindi sinasadya at wala na akong pera ngayon",
        "dalawang beses mo na akong napatay kaya mag iingat na ako ngayon",
        "binuhay ako ng suporta sa buong laban na iyon na talagang kahanga hanga",
        "may makakapagsabi ba kung bakit nagsasaka pa rin ang ating karga sa ligtas na linya",
        "magsama sama tayong lima at tapusin ang larong ito bago sila bumalik",
        "napakadelikado ng pagsugod sa tore pero kahit papaano ay gumana ito",
        "nag lag ang internet ko ng isang segundo at dumiretso ako sa kanilang koponan",
        "mahusay ang laro ng lahat ang huling laban ang pinakamaganda sa buong tugma",
        "i ulat siya sa pagpapakain sa gitna buong laro at pag iwan sa atin sa huli",
    ],
}


def trigram_table(lines: list[str], top_k: int) -> dict[str, float]:
    counts: Counter[str] = Counter()
    for line in lines:
        padded = " " + " ".join(line.lower().split()) + " "
        for i in range(len(padded) - NGRAM + 1):
            counts[padded[i : i + NGRAM]] += 1
    top = counts.most_common(top_k)
    total = sum(c for _, c in top)
    return {gram: count / total for gram, count in sorted(top)}


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "src" / "chatguard" / "data" / "lang_profiles.json"
    doc = {
        "schema": 1,
        "ngram": NGRAM,
        "min_length": 6,
        "acceptance_threshold": 0.5,
        "profiles": {lang: trigram_table(lines, TOP_K) for lang, lines in SEEDS.items()},
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1) + "\n", "utf-8")
    sizes = {lang: len(table) for lang, table in doc["profiles"].items()}
    print(f"wrote {out} ({sizes})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
